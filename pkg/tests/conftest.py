import random

import numpy as np
import pytest

from torelli_lab.binforms import BinaryForm
from torelli_lab.ivhs import IVHSPresentation


def random_exact_form(rng: random.Random, degree: int, bound: int = 9) -> BinaryForm:
    coeffs = [rng.randint(-bound, bound) for _ in range(degree + 1)]
    while coeffs[-1] == 0:
        coeffs[-1] = rng.randint(-bound, bound)
    return BinaryForm(degree, coeffs)


@pytest.fixture
def tiny_built_presentation():
    """h=2, N=3 span of e1 (x) f1, e2 (x) f2, (e1+e2)/sqrt2 (x) f3."""
    x = np.array([[1.0, 0.0],
                  [0.0, 1.0],
                  [1.0 / np.sqrt(2.0), 1.0 / np.sqrt(2.0)]], dtype=complex)
    basis = np.zeros((3, 2, 3), dtype=complex)
    for k in range(3):
        basis[k, :, k] = x[k]
    return IVHSPresentation(h=2, N=3, basis=basis), x
