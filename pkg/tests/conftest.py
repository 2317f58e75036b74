import numpy as np
import pytest

from waveshrink.rules import SCAD_DEFAULT_A, RULE_KINDS, ShrinkageRule


def rule_catalog(lam=1.0, lam2=None, a=None):
    """One rule per family at threshold ``lam`` (firm lam2 defaults 2*lam)."""
    rules = []
    for kind in RULE_KINDS:
        if kind == "firm":
            rules.append(ShrinkageRule("firm", lam, lam2=lam2 or 2.0 * lam))
        elif kind == "scad":
            rules.append(ShrinkageRule("scad", lam, a=a or SCAD_DEFAULT_A))
        else:
            rules.append(ShrinkageRule(kind, lam))
    return rules


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
