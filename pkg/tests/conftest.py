import mpmath
import numpy as np
import pytest

from qdicke import DeformationSpec, ModelParams


def mp_q_factor(n, q, dps=50):
    """Direct high-precision evaluation of the q-oscillator factor."""
    with mpmath.workdps(dps):
        x = mpmath.log(mpmath.mpf(q))
        if x == 0:
            return mpmath.mpf(1)
        return mpmath.sqrt(mpmath.sinh(n * x) / (n * mpmath.sinh(x)))


def transcribed_s3(N, f2, f3, t):
    """Expanded closed-form s = 3 amplitudes (g = 1), ordered (C0, C1, C2, C3) by excited atoms."""
    a2 = 3 * N * f3**2
    b2 = 4 * f2**2 * (N - 1)
    c2 = 3 * (N - 2)
    tot = a2 + b2 + c2
    disc = np.sqrt(tot**2 - 4 * a2 * c2)
    op, om = np.sqrt((tot + disc) / 2), np.sqrt((tot - disc) / 2)
    p = op**2 * om**2 / (op**2 - om**2)
    k = 3 * N * f3**2
    c0 = -2j * f2 * np.sqrt(N - 1) / (3 * f3 * np.sqrt(N * (N - 2))) * p * (np.sin(op * t) / op - np.sin(om * t) / om)
    c1 = 2 * f2 * np.sqrt(N - 1) / (k * np.sqrt(3 * (N - 2))) * p * (np.cos(op * t) - np.cos(om * t))
    den = k * np.sqrt(3 * (N - 2)) * (op**2 - om**2)
    c2_ = -1j * (op**2 - k) * op * om**2 / den * np.sin(op * t) + 1j * (om**2 - k) * op**2 * om / den * np.sin(om * t)
    den3 = k * (op**2 - om**2)
    c3 = (op**2 - k) * om**2 / den3 * np.cos(op * t) - (om**2 - k) * op**2 / den3 * np.cos(om * t)
    return np.stack([c0, c1, c2_, c3], axis=-1)


@pytest.fixture
def fig1_params():
    return [ModelParams(6, 2, 1.0, DeformationSpec.qdeformed(q)) for q in (1, 5, 20)]


@pytest.fixture
def fig2_params():
    return [ModelParams(6, 3, 1.0, DeformationSpec.qdeformed(q)) for q in (1, 2, 4)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
