"""Reference numpy implementations of the hot kernels.

Same call surface as the compiled extension in _core.pyx.  Everything here
mutates flat complex128 arrays in place; callers own the buffers.
"""

import numpy as np

NAME = "pure"


def apply_single_qubit(amps, bitpos, m00, m01, m10, m11):
    """Apply a 2x2 matrix to the qubit owning bit `bitpos`, in place."""
    n_hi = amps.shape[0] >> (bitpos + 1)
    view = amps.reshape(n_hi, 2, 1 << bitpos)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :]
    view[:, 0, :] = m00 * a0 + m01 * a1
    view[:, 1, :] = m10 * a0 + m11 * a1


def phase_flip(amps, mask):
    """Negate every amplitude whose index has all bits of `mask` set."""
    idx = np.arange(amps.shape[0])
    sel = (idx & mask) == mask
    amps[sel] = -amps[sel]


def apply_controlled_x(amps, ctrl_mask, target_bit):
    """Multi-controlled X: swap the target-bit pair where all controls are 1."""
    tb = 1 << target_bit
    idx = np.arange(amps.shape[0])
    lo = idx[((idx & ctrl_mask) == ctrl_mask) & ((idx & tb) == 0)]
    hi = lo | tb
    tmp = amps[lo].copy()
    amps[lo] = amps[hi]
    amps[hi] = tmp


def _pair_rec(k, n, v, mats):
    # mats: (2n, 2, 2), order [a_1, a_1', a_2, a_2', ...]
    A = mats[2 * (k - 1)]
    Ap = mats[2 * (k - 1) + 1]
    bitpos = n - k
    if k == 1:
        return _mat_on_bit(v, bitpos, A), _mat_on_bit(v, bitpos, Ap)
    s = _mat_on_bit(v, bitpos, A + Ap)
    d = _mat_on_bit(v, bitpos, A - Ap)
    ms, mps = _pair_rec(k - 1, n, s, mats)
    md, mpd = _pair_rec(k - 1, n, d, mats)
    return 0.5 * (ms + mpd), 0.5 * (mps - md)


def _mat_on_bit(v, bitpos, m):
    n_hi = v.shape[0] >> (bitpos + 1)
    w = v.reshape(n_hi, 2, 1 << bitpos)
    return np.einsum("ij,ajb->aib", m, w).reshape(v.shape[0])


def mermin_pair(amps, n, mats, work=None):
    """Expectations of the Mermin pair (M_n, M_n') for one observable family.

    `mats` holds the 2n observable matrices interleaved [a_1, a_1', ...].
    Returns two floats.  `work` is accepted for signature parity with the
    compiled kernel and ignored.
    """
    mv, mpv = _pair_rec(n, n, amps, mats)
    return float(np.vdot(amps, mv).real), float(np.vdot(amps, mpv).real)


def mermin_objective(amps, n, thetas, phis, work=None):
    """Build observables from spherical angles and return (<M_n>, <M_n'>).

    thetas/phis: length 2n, polar/azimuth per direction, interleaved
    [a_1, a_1', a_2, a_2', ...].  v = (sin t cos p, sin t sin p, cos t).
    """
    st, ct = np.sin(thetas), np.cos(thetas)
    al = st * np.cos(phis)
    be = st * np.sin(phis)
    mats = np.empty((2 * n, 2, 2), dtype=np.complex128)
    mats[:, 0, 0] = ct
    mats[:, 1, 1] = -ct
    mats[:, 0, 1] = al - 1j * be
    mats[:, 1, 0] = al + 1j * be
    return mermin_pair(amps, n, mats)
