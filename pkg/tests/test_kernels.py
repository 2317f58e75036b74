"""Backend selection and compiled/pure parity."""

import numpy as np
import pytest

from waveshrink import dwt, get_wavelet, idwt, kernels

HAS_COMPILED = "cython" in kernels.available_backends()


def test_python_backend_always_available():
    assert "python" in kernels.available_backends()


def test_use_backend_restores_selection():
    before = kernels.active()
    with kernels.use_backend("python") as backend:
        assert kernels.active() is backend
        assert backend.name == "python"
    assert kernels.active() is before


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled backend not built")
@pytest.mark.parametrize("n", [4, 8, 64, 512])
@pytest.mark.parametrize("wavelet", ["haar", "db4"])
def test_step_parity(rng, n, wavelet):
    fp = get_wavelet(wavelet)
    x = rng.standard_normal(n)
    cy = kernels.get_backend("cython")
    py = kernels.get_backend("python")
    a_c, d_c = cy.dwt_step(x, fp.low_pass, fp.high_pass)
    a_p, d_p = py.dwt_step(x, fp.low_pass, fp.high_pass)
    assert np.allclose(a_c, a_p, rtol=1e-13, atol=1e-15)
    assert np.allclose(d_c, d_p, rtol=1e-13, atol=1e-15)
    r_c = cy.idwt_step(a_c, d_c, fp.low_pass, fp.high_pass)
    r_p = py.idwt_step(a_c, d_c, fp.low_pass, fp.high_pass)
    assert np.allclose(r_c, r_p, rtol=1e-13, atol=1e-15)


@pytest.mark.skipif(not HAS_COMPILED, reason="compiled backend not built")
def test_full_transform_parity(rng):
    fp = get_wavelet("db4")
    x = rng.standard_normal(256)
    with kernels.use_backend("cython"):
        dec_c = dwt(x, fp, 0)
        rec_c = idwt(dec_c, fp)
    with kernels.use_backend("python"):
        dec_p = dwt(x, fp, 0)
        rec_p = idwt(dec_p, fp)
    assert np.allclose(dec_c.flatten(), dec_p.flatten(), rtol=1e-13, atol=1e-14)
    assert np.allclose(rec_c, rec_p, rtol=1e-13, atol=1e-14)


def test_short_level_wraps_filter(rng):
    # Level shorter than the filter: modular indexing must keep the step
    # orthogonal (energy preserved).
    fp = get_wavelet("db4")
    x = rng.standard_normal(4)
    a, d = kernels.active().dwt_step(x, fp.low_pass, fp.high_pass)
    assert np.isclose(np.dot(a, a) + np.dot(d, d), np.dot(x, x), rtol=1e-12)
    back = kernels.active().idwt_step(a, d, fp.low_pass, fp.high_pass)
    assert np.allclose(back, x, atol=1e-12)
