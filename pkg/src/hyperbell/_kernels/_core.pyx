# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: statevector gate application and the Mermin pair
recursion used inside the hill-climb objective.

Mirrors _kernels/pure.py; buffers are flat contiguous complex128 arrays.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos

cnp.import_array()

NAME = "compiled"


def apply_single_qubit(double complex[::1] amps, int bitpos,
                       double complex m00, double complex m01,
                       double complex m10, double complex m11):
    cdef Py_ssize_t N = amps.shape[0]
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << bitpos
    _mat_on_bit(&amps[0], &amps[0], m00, m01, m10, m11, stride, N)


def phase_flip(double complex[::1] amps, Py_ssize_t mask):
    cdef Py_ssize_t i, N = amps.shape[0]
    for i in range(N):
        if (i & mask) == mask:
            amps[i] = -amps[i]


def apply_controlled_x(double complex[::1] amps, Py_ssize_t ctrl_mask, int target_bit):
    cdef Py_ssize_t tb = (<Py_ssize_t>1) << target_bit
    cdef Py_ssize_t i, N = amps.shape[0]
    cdef double complex tmp
    for i in range(N):
        if (i & ctrl_mask) == ctrl_mask and (i & tb) == 0:
            tmp = amps[i]
            amps[i] = amps[i | tb]
            amps[i | tb] = tmp


cdef void _mat_on_bit(double complex* v, double complex* out,
                      double complex m00, double complex m01,
                      double complex m10, double complex m11,
                      Py_ssize_t stride, Py_ssize_t N) noexcept nogil:
    # out may alias v
    cdef Py_ssize_t base = 0, off, i0, i1
    cdef double complex t0, t1
    while base < N:
        for off in range(stride):
            i0 = base + off
            i1 = i0 + stride
            t0 = v[i0]
            t1 = v[i1]
            out[i0] = m00 * t0 + m01 * t1
            out[i1] = m10 * t0 + m11 * t1
        base += 2 * stride


cdef void _pair_rec(int k, int n, double complex* v,
                    double complex* out_m, double complex* out_mp,
                    double complex* mats, double complex* work,
                    Py_ssize_t N) noexcept nogil:
    # mats: 2n matrices of 4 entries each, interleaved [a_1, a_1', a_2, ...]
    cdef double complex* A = mats + 8 * (k - 1)
    cdef double complex* Ap = A + 4
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << (n - k)
    cdef Py_ssize_t i
    cdef double complex *s
    cdef double complex *d
    cdef double complex *ms
    cdef double complex *mps
    cdef double complex *md
    cdef double complex *mpd
    if k == 1:
        _mat_on_bit(v, out_m, A[0], A[1], A[2], A[3], stride, N)
        _mat_on_bit(v, out_mp, Ap[0], Ap[1], Ap[2], Ap[3], stride, N)
        return
    s = work
    d = work + N
    ms = work + 2 * N
    mps = work + 3 * N
    md = work + 4 * N
    mpd = work + 5 * N
    _mat_on_bit(v, s, A[0] + Ap[0], A[1] + Ap[1], A[2] + Ap[2], A[3] + Ap[3], stride, N)
    _mat_on_bit(v, d, A[0] - Ap[0], A[1] - Ap[1], A[2] - Ap[2], A[3] - Ap[3], stride, N)
    _pair_rec(k - 1, n, s, ms, mps, mats, work + 6 * N, N)
    _pair_rec(k - 1, n, d, md, mpd, mats, work + 6 * N, N)
    for i in range(N):
        out_m[i] = 0.5 * (ms[i] + mpd[i])
        out_mp[i] = 0.5 * (mps[i] - md[i])


def mermin_pair(const double complex[::1] amps, int n,
                const double complex[:, :, ::1] mats,
                double complex[:, ::1] work=None):
    """Expectations (<M_n>, <M_n'>) for one interleaved observable family."""
    cdef Py_ssize_t N = amps.shape[0]
    cdef cnp.ndarray wbuf
    if work is None:
        wbuf = np.empty((6 * n + 2, N), dtype=np.complex128)
        work = wbuf
    cdef double complex* w = &work[0, 0]
    cdef double complex* out_m = w
    cdef double complex* out_mp = w + N
    _pair_rec(n, n, <double complex*>&amps[0], out_m, out_mp,
              <double complex*>&mats[0, 0, 0], w + 2 * N, N)
    cdef double complex em = 0, emp = 0
    cdef Py_ssize_t i
    for i in range(N):
        em += amps[i].conjugate() * out_m[i]
        emp += amps[i].conjugate() * out_mp[i]
    return em.real, emp.real


def mermin_objective(const double complex[::1] amps, int n,
                     const double[::1] thetas, const double[::1] phis,
                     double complex[:, ::1] work=None):
    """Angles -> observable matrices -> (<M_n>, <M_n'>), all in C."""
    cdef Py_ssize_t N = amps.shape[0]
    cdef cnp.ndarray wbuf
    if work is None:
        wbuf = np.empty((6 * n + 2, N), dtype=np.complex128)
        work = wbuf
    cdef double complex mats[96]
    cdef int j
    cdef double st, ct, al, be
    if n > 12:
        raise ValueError("kernel supports n <= 12")
    for j in range(2 * n):
        st = sin(thetas[j])
        ct = cos(thetas[j])
        al = st * cos(phis[j])
        be = st * sin(phis[j])
        mats[4 * j + 0] = ct
        mats[4 * j + 1] = al - 1j * be
        mats[4 * j + 2] = al + 1j * be
        mats[4 * j + 3] = -ct
    cdef double complex* w = &work[0, 0]
    cdef double complex* out_m = w
    cdef double complex* out_mp = w + N
    _pair_rec(n, n, <double complex*>&amps[0], out_m, out_mp, &mats[0],
              w + 2 * N, N)
    cdef double complex em = 0, emp = 0
    cdef Py_ssize_t i
    for i in range(N):
        em += amps[i].conjugate() * out_m[i]
        emp += amps[i].conjugate() * out_mp[i]
    return em.real, emp.real
