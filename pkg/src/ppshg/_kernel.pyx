# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled batch integrator; mirrors ppshg._kernel_py exactly."""

from libc.math cimport sqrt, fabs

COMPILED = True


cdef inline double complex _principal_sqrt(double complex z) nogil:
    # principal-branch complex sqrt, inlined to avoid the csqrt call
    cdef double re = z.real
    cdef double im = z.imag
    cdef double m, t
    if im == 0.0:
        if re >= 0.0:
            return sqrt(re)
        return 1j * sqrt(-re)
    m = sqrt(re * re + im * im)
    t = sqrt(0.5 * (m + fabs(re)))
    if re >= 0.0:
        return t + 1j * (im / (2.0 * t))
    if im >= 0.0:
        return im / (2.0 * t) + 1j * t
    return -im / (2.0 * t) - 1j * t


def run_steps(
    double complex[::1] alpha,
    double complex[::1] alpha_plus,
    double complex[::1] beta,
    double complex[::1] beta_plus,
    double[:, :, ::1] noise,
    double kappa,
    double dz,
    bint midpoint,
    bint use_noise,
    int midpoint_iterations=3,
):
    """Advance the batch by noise.shape[0] steps (in place).

    noise has shape (n_steps, 2, n_traj); rows are the eta1/eta2 draws.
    """
    cdef Py_ssize_t n = alpha.shape[0]
    cdef Py_ssize_t n_steps = noise.shape[0]
    cdef Py_ssize_t i, s
    cdef int it
    cdef double sqdz = sqrt(dz)
    cdef double half = 0.5 * dz
    cdef double complex a, ap, b, bp
    cdef double complex am, apm, bm, bpm
    cdef double complex am2, apm2, bm2, bpm2

    with nogil:
        for s in range(n_steps):
            for i in range(n):
                a = alpha[i]
                ap = alpha_plus[i]
                b = beta[i]
                bp = beta_plus[i]
                am = a; apm = ap; bm = b; bpm = bp
                if midpoint:
                    for it in range(midpoint_iterations):
                        am2 = a + half * kappa * apm * bm
                        apm2 = ap + half * kappa * am * bpm
                        bm2 = b - 0.5 * half * kappa * am * am
                        bpm2 = bp - 0.5 * half * kappa * apm * apm
                        am = am2; apm = apm2; bm = bm2; bpm = bpm2
                am2 = a + dz * kappa * apm * bm
                apm2 = ap + dz * kappa * am * bpm
                if use_noise:
                    am2 = am2 + _principal_sqrt(kappa * bm) * (noise[s, 0, i] * sqdz)
                    apm2 = apm2 + _principal_sqrt(kappa * bpm) * (noise[s, 1, i] * sqdz)
                beta[i] = b - 0.5 * dz * kappa * am * am
                beta_plus[i] = bp - 0.5 * dz * kappa * apm * apm
                alpha[i] = am2
                alpha_plus[i] = apm2
