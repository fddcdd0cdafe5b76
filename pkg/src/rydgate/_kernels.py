"""Numba-compiled integration kernels.

The Lindblad right-hand side is evaluated in a structure-exploiting form:
the Hamiltonian is rebuilt from two constant coupling matrices scaled by the
complex pulse amplitudes, the commutator uses [H, rho] = H rho - (H rho)^dag
(valid for Hermitian rho, which every RK4 stage preserves), the
anticommutator part of the dissipator is an element-wise weight matrix
(sum_j L_j^dag L_j is diagonal), and each L rho L^dag term is an index
gather because every collapse operator is a single-atom lowering operator.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _build_h(c1, c2, a1, a2, vdiag, out):
    d = a1.shape[0]
    c1c = np.conj(c1)
    c2c = np.conj(c2)
    for i in range(d):
        for j in range(d):
            out[i, j] = (c1 * a1[i, j] + c1c * a1[j, i]
                         + c2 * a2[i, j] + c2c * a2[j, i])
        out[i, i] += vdiag[i]


@njit(cache=True, nogil=True)
def _lindblad_rhs(h, rho, decw, dec_dst, dec_src, gamma, out):
    d = rho.shape[0]
    m = np.dot(h, rho)
    for i in range(d):
        for j in range(d):
            out[i, j] = -1j * (m[i, j] - np.conj(m[j, i])) - decw[i, j] * rho[i, j]
    n_ch = dec_dst.shape[0]
    n_idx = dec_dst.shape[1]
    for c in range(n_ch):
        for p in range(n_idx):
            ip = dec_dst[c, p]
            sp = dec_src[c, p]
            for q in range(n_idx):
                out[ip, dec_dst[c, q]] += gamma * rho[sp, dec_src[c, q]]


@njit(cache=True, nogil=True)
def rk4_lindblad(rho, c1, c2, a1, a2, vdiag, decw, dec_dst, dec_src, gamma,
                 dt, n_steps, do_hermitize, traj, stride):
    """Fixed-step RK4 on the Lindblad master equation, in place.

    rho: (B, d, d) batch of density matrices.
    c1, c2: complex pulse amplitudes (already include the factor 1/2 and any
        phase factors) sampled on the half-step grid t_k = k*dt/2,
        length 2*n_steps + 1.
    traj: (n_records, B, d) real array of diagonal populations, filled at
        every `stride` steps (plus the initial state); stride 0 disables it.
    """
    nb = rho.shape[0]
    d = rho.shape[1]
    h = np.empty((d, d), dtype=np.complex128)
    k1 = np.empty((d, d), dtype=np.complex128)
    k2 = np.empty((d, d), dtype=np.complex128)
    k3 = np.empty((d, d), dtype=np.complex128)
    k4 = np.empty((d, d), dtype=np.complex128)
    tmp = np.empty((d, d), dtype=np.complex128)
    rec = 0
    if stride > 0:
        for b in range(nb):
            for i in range(d):
                traj[rec, b, i] = rho[b, i, i].real
        rec += 1
    for step in range(n_steps):
        k = 2 * step
        for b in range(nb):
            rb = rho[b]
            _build_h(c1[k], c2[k], a1, a2, vdiag, h)
            _lindblad_rhs(h, rb, decw, dec_dst, dec_src, gamma, k1)
            _build_h(c1[k + 1], c2[k + 1], a1, a2, vdiag, h)
            for i in range(d):
                for j in range(d):
                    tmp[i, j] = rb[i, j] + 0.5 * dt * k1[i, j]
            _lindblad_rhs(h, tmp, decw, dec_dst, dec_src, gamma, k2)
            for i in range(d):
                for j in range(d):
                    tmp[i, j] = rb[i, j] + 0.5 * dt * k2[i, j]
            _lindblad_rhs(h, tmp, decw, dec_dst, dec_src, gamma, k3)
            _build_h(c1[k + 2], c2[k + 2], a1, a2, vdiag, h)
            for i in range(d):
                for j in range(d):
                    tmp[i, j] = rb[i, j] + dt * k3[i, j]
            _lindblad_rhs(h, tmp, decw, dec_dst, dec_src, gamma, k4)
            sixth = dt / 6.0
            for i in range(d):
                for j in range(d):
                    rb[i, j] += sixth * (k1[i, j] + 2.0 * (k2[i, j] + k3[i, j]) + k4[i, j])
            if do_hermitize:
                for i in range(d):
                    for j in range(i + 1, d):
                        avg = 0.5 * (rb[i, j] + np.conj(rb[j, i]))
                        rb[i, j] = avg
                        rb[j, i] = np.conj(avg)
                    rb[i, i] = complex(rb[i, i].real, 0.0)
        if stride > 0 and ((step + 1) % stride == 0 or step == n_steps - 1):
            for b in range(nb):
                for i in range(d):
                    traj[rec, b, i] = rho[b, i, i].real
            rec += 1
    return rec


@njit(cache=True, nogil=True)
def rk4_pure_const(psi, h, dt, n_steps, traj, stride):
    """RK4 on dpsi/dt = -i H psi for constant H.

    Returns the per-level populations averaged over all n_steps+1 samples.
    traj (n_records, d) complex stores the state every `stride` steps when
    stride > 0.
    """
    d = psi.shape[0]
    k1 = np.empty(d, dtype=np.complex128)
    k2 = np.empty(d, dtype=np.complex128)
    k3 = np.empty(d, dtype=np.complex128)
    k4 = np.empty(d, dtype=np.complex128)
    tmp = np.empty(d, dtype=np.complex128)
    avg = np.zeros(d, dtype=np.float64)
    for i in range(d):
        avg[i] += (psi[i].real ** 2 + psi[i].imag ** 2)
    rec = 0
    if stride > 0:
        traj[rec, :] = psi
        rec += 1
    for step in range(n_steps):
        for i in range(d):
            acc = 0.0 + 0.0j
            for j in range(d):
                acc += h[i, j] * psi[j]
            k1[i] = -1j * acc
        for i in range(d):
            tmp[i] = psi[i] + 0.5 * dt * k1[i]
        for i in range(d):
            acc = 0.0 + 0.0j
            for j in range(d):
                acc += h[i, j] * tmp[j]
            k2[i] = -1j * acc
        for i in range(d):
            tmp[i] = psi[i] + 0.5 * dt * k2[i]
        for i in range(d):
            acc = 0.0 + 0.0j
            for j in range(d):
                acc += h[i, j] * tmp[j]
            k3[i] = -1j * acc
        for i in range(d):
            tmp[i] = psi[i] + dt * k3[i]
        for i in range(d):
            acc = 0.0 + 0.0j
            for j in range(d):
                acc += h[i, j] * tmp[j]
            k4[i] = -1j * acc
        for i in range(d):
            psi[i] += (dt / 6.0) * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])
            avg[i] += (psi[i].real ** 2 + psi[i].imag ** 2)
        if stride > 0 and ((step + 1) % stride == 0 or step == n_steps - 1):
            traj[rec, :] = psi
            rec += 1
    return avg / (n_steps + 1)
