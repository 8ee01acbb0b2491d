"""Volkov-state decomposition of twisted packets and wavefunction synthesis.

The conserved content of a run is the coefficient table c(p', phi_p', s')
on the fixed-p_perp cylinder (the transverse delta function of the exact
decomposition is carried symbolically and never discretized).  Coefficients
are anchored at a reference time `t_ref`: the state freely continued to
t_ref equals the Gaussian-smeared beam exactly.  Anchoring at the collision
(t_ref = 0, when the pulse center crosses z = 0) pins the physics so that
the numerical margins L and xi_max drop out of every observable; the
finite-L construction anchored at t_in is kept as a verification oracle of
the default closed-form (L -> infinity) path.

With the z-quantized spin convention the closed-form coefficients are
diagonal in (s, s'); spin mixing appears at finite L and dies out ~ 1/L,
which the tests exercise.

Wavefunction synthesis factorizes the reconstruction integral as

  psi(x) ~ sum_phi E(x_perp, phi) sum_H e^{iH phi}
           sum_r w_r(xi(z), phi) [T_{H,r}(z) + A(xi) U_{H,r}(z)],

using (i) the exact rank-1 structure of the Volkov phase, S(xi, phi)/D(p'),
interpolated over y = 1/D by a Chebyshev barycentric rule (w_r, T/U per
node), and (ii) FFT evaluation of the free dispersive integrals T, U over a
uniform fine momentum grid.  This keeps late-time, strongly dispersed
packets affordable: cost is FFTs plus one (phi x phi) Gram accumulation per
z chunk, never (points x modes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.interpolate import CubicSpline

from .beams import BeamSpec, Q_SPAN_SIGMAS, smearing
from .field import LaserPulse
from .numerics import gauss_legendre_panels
from .spinors import LIGHTFRONT_MATRIX, a_coefficients, cone_bispinor
from .units import C

DEFAULT_N_P = 257
DEFAULT_N_PHI = 64


def _energies(p_par, p_perp):
    p_par = np.asarray(p_par, dtype=float)
    return C * np.sqrt(C**2 + p_perp**2 + p_par * p_par)


@dataclass
class MomentumAmplitude:
    """Positive-energy Volkov coefficients of a packet at fixed p_perp.

    `values[js, ip, iphi]` is c(p_par'[ip], phi[iphi], s'[js]) with
    s' = (+1/2, -1/2); the common e^{i eps' t_ref} anchor phase is NOT
    included in the table (downstream formulas apply it explicitly).
    Time-independent once built; total weight normalized to 1.
    """

    beam: BeamSpec
    t_ref: float
    p_grid: np.ndarray
    p_weights: np.ndarray
    phi_grid: np.ndarray
    values: np.ndarray
    convention: str = "delta-limit"
    norm_scale: float = 1.0  # factor applied to reach total weight 1

    @property
    def p_perp(self) -> float:
        return self.beam.p_perp

    @property
    def phi_weight(self) -> float:
        return 2.0 * math.pi / len(self.phi_grid)

    def total_weight(self) -> float:
        w = np.sum(np.abs(self.values) ** 2, axis=(0, 2)) * self.phi_weight
        return float(np.sum(w * self.p_weights))

    def negative_energy_peak(self) -> float:
        """The zeta = -1 channel is empty by construction; report 0."""
        return 0.0

    def harmonic_profiles(self, p) -> list[tuple[int, float, np.ndarray]]:
        """Closed-form (H, s_channel, gamma(p)) azimuthal harmonics of c.

        Only available for the delta-limit convention, where
        c(p, phi, s') = sum over constituents of
        gamma(p) e^{i l phi} delta_{s', s}.  gamma includes the
        normalization scale but not the t_ref phase.
        """
        if self.convention != "delta-limit":
            raise ValueError("harmonic closure only exists for delta-limit")
        p = np.asarray(p, dtype=float)
        f = smearing(p - self.beam.p_par, self.beam.sigma)
        out = []
        for coef, l, s in self.beam.constituents(p):
            gamma = (self.norm_scale / math.sqrt(2.0 * math.pi)
                     * np.broadcast_to(coef, p.shape) * f * (1j) ** (-l))
            out.append((l, s, gamma))
        return out


def _default_grids(beam: BeamSpec, n_p: int, n_phi: int, p_span: float):
    half = p_span * beam.sigma
    panels = max(8, n_p // 24)
    order = max(4, int(math.ceil(n_p / panels)))
    p, w = gauss_legendre_panels(beam.p_par - half, beam.p_par + half,
                                 panels, order)
    phi = np.arange(n_phi) * (2.0 * math.pi / n_phi)
    return p, w, phi


def packet_coefficients_delta(beam: BeamSpec, *, t_ref: float = 0.0,
                              n_p: int = DEFAULT_N_P,
                              n_phi: int = DEFAULT_N_PHI,
                              p_span: float = Q_SPAN_SIGMAS) -> MomentumAmplitude:
    """Coefficients in the L -> infinity limit (default fast path).

    The longitudinal sinc kernel collapses to pi delta(p_par + q - p_par'),
    so each constituent contributes a single azimuthal harmonic e^{i l phi}
    with Gaussian p' profile, diagonal in spin.
    """
    if n_phi & (n_phi - 1):
        raise ValueError("n_phi must be a power of two")
    p, w, phi = _default_grids(beam, n_p, n_phi, p_span)
    values = np.zeros((2, len(p), n_phi), dtype=complex)
    f = smearing(p - beam.p_par, beam.sigma)
    for coef, l, s in beam.constituents(p):
        js = 0 if s > 0 else 1
        gamma = (np.broadcast_to(coef, p.shape) * f * (1j) ** (-l)
                 / math.sqrt(2.0 * math.pi))
        values[js] += gamma[:, None] * np.exp(1j * l * phi)[None, :]
    amp = MomentumAmplitude(beam, t_ref, p, w, phi, values)
    total = amp.total_weight()
    amp.norm_scale = 1.0 / math.sqrt(total)
    amp.values = amp.values * amp.norm_scale
    return amp


def packet_coefficients_finite_l(beam: BeamSpec, pulse: LaserPulse,
                                 box_half_length: float, *,
                                 t_in: float,
                                 n_p: int = DEFAULT_N_P,
                                 n_phi: int = DEFAULT_N_PHI,
                                 p_span: float = Q_SPAN_SIGMAS,
                                 points_per_sinc: int = 24) -> MomentumAmplitude:
    """Coefficients from the finite-box longitudinal integral (oracle path).

    The packet must sit in [-L, L] with the pulse entirely to the right at
    t_in, so the Volkov factor reduces to the free phase in the overlap
    region; violating that geometry raises with the violated inequality.
    Spin off-diagonal entries are genuine here and vanish only as L grows.
    """
    if n_phi & (n_phi - 1):
        raise ValueError("n_phi must be a power of two")
    L = float(box_half_length)
    left_edge = -pulse.xi_max - C * t_in  # pulse left edge position at t_in
    if left_edge < L - 1e-9:
        raise ValueError(
            "packet/pulse overlap at t_in: need pulse left edge "
            f"-xi_max - c t_in = {left_edge:.3f} >= L = {L:.3f}")
    p, w, phi = _default_grids(beam, n_p, n_phi, p_span)
    # q quadrature must resolve both the Gaussian and the sinc oscillation
    half = p_span * beam.sigma
    periods = 2.0 * half * L / (2.0 * math.pi)
    n_q = max(801, int(periods * points_per_sinc))
    q, wq = gauss_legendre_panels(-half, half, max(16, n_q // 12), 12)
    fq = smearing(q, beam.sigma)

    values = np.zeros((2, len(p), n_phi), dtype=complex)
    e_phi = np.exp(1j * phi)
    for coef, l, s in beam.constituents(beam.p_par + q):
        a_q = a_coefficients(beam.p_par + q, beam.p_perp, s).stacked()
        for js, s_out in enumerate((+0.5, -0.5)):
            a_out = a_coefficients(p, beam.p_perp, s_out).stacked()
            # u(p', s')^dag a_k(p_par + q): harmonics d = k - j from the
            # cone expansion of u; contract spinor indices first.
            for i_j, kj in enumerate((-1, 0, 1)):
                for i_k, kk in enumerate((-1, 0, 1)):
                    spin = np.einsum("pc,qc->pq", a_out[i_j].conj(), a_q[i_k])
                    if not np.any(spin):
                        continue
                    dphase = beam.p_par + q[None, :] - p[:, None]
                    sinc = np.where(
                        np.abs(dphase) < 1e-14, L / math.pi,
                        np.sin(dphase * L) / (math.pi * dphase))
                    gq = (np.broadcast_to(coef, q.shape) * fq * wq)[None, :]
                    radial = np.sum(spin * sinc * gq, axis=1) / 2.0
                    harm = e_phi ** (l + kk - kj)
                    values[js] += ((1j) ** (-l) * radial)[:, None] * harm[None, :]
    amp = MomentumAmplitude(beam, t_in, p, w, phi, values,
                            convention="finite-L")
    total = amp.total_weight()
    amp.norm_scale = 1.0 / math.sqrt(total)
    amp.values = amp.values * amp.norm_scale
    return amp


# ---------------------------------------------------------------------------
# direct (reference) reconstruction


def wavefunction_values(amp: MomentumAmplitude, pulse: LaserPulse, t: float,
                        points) -> np.ndarray:
    """psi(t, x) by direct quadrature over the amplitude's own grids.

    Reference path for tests and small point sets.  Accurate while the
    dispersive phase eps'(p) (t - t_ref) is resolved by the p grid; the FFT
    engine in `density_moments` handles late times.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    p, wp, phi = amp.p_grid, amp.p_weights, amp.phi_grid
    eps = _energies(p, amp.p_perp)
    den = eps + C * p
    kx = amp.p_perp * np.cos(phi)
    ky = amp.p_perp * np.sin(phi)
    pref = math.sqrt(amp.p_perp) * (2.0 * math.pi) ** -1.5 * amp.phi_weight
    out = np.zeros((len(pts), 4), dtype=complex)
    u_tab = np.stack([cone_bispinor(p, amp.p_perp, phi, s)
                      for s in (+0.5, -0.5)])      # (2, n_p, n_phi, 4)
    nu_tab = np.einsum("ij,spfj->spfi", LIGHTFRONT_MATRIX, u_tab)
    xi = C * t + pts[:, 2]
    ia, ia2 = pulse.phase_integrals(xi)
    a_of_z = pulse.vector_potential(xi)
    trans = np.exp(1j * (np.outer(pts[:, 0], kx) + np.outer(pts[:, 1], ky)))
    for ip in range(len(p)):
        phase_z = np.exp(1j * p[ip] * pts[:, 2]
                         - 1j * eps[ip] * (t - amp.t_ref))
        w_volk = np.exp(-1j * (np.outer(ia, kx) + ia2[:, None] / (2.0 * C))
                        / den[ip])                    # (n_pts, n_phi)
        spin = np.einsum("sf,sfc->fc", amp.values[:, ip, :], u_tab[:, ip])
        spin_n = np.einsum("sf,sfc->fc", amp.values[:, ip, :], nu_tab[:, ip])
        dress = spin[None, :, :] + (a_of_z[:, None, None]
                                    / (2.0 * den[ip])) * spin_n[None, :, :]
        out += wp[ip] * np.einsum("nf,nf,nfc->nc",
                                  trans, w_volk, dress) * phase_z[:, None]
    return pref * out


# ---------------------------------------------------------------------------
# FFT synthesis engine


@dataclass(frozen=True)
class SynthesisSettings:
    """Resolution knobs of the density engine (desk-scale defaults)."""

    n_phi: int = 96
    p_span: float = Q_SPAN_SIGMAS
    band_safety: float = 1.35
    cheb_margin: int = 8
    max_cheb: int = 48
    z_chunk: int = 4096


@dataclass(frozen=True)
class Box:
    """Observation box: transverse square around (x_c, 0), z window."""

    x_center: float
    z_center: float
    half_xy: float
    z_half: float
    n_xy: int = 64
    dz: float | None = None


@dataclass
class DensityMoments:
    x_axis: np.ndarray
    y_axis: np.ndarray
    rho_xy: np.ndarray          # z-integrated density over the box, raw
    norm: float                 # integral of rho over the box
    x_mean: float
    y_mean: float
    z_mean: float
    z_var: float
    time: float = 0.0
    # cellwise z-weighted densities, for windowed moments downstream
    znum_xy: np.ndarray | None = None
    z2num_xy: np.ndarray | None = None


def _chebyshev_nodes_weights(lo: float, hi: float, n: int):
    k = np.arange(n)
    theta = math.pi * (2 * k + 1) / (2 * n)
    nodes = 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(theta)
    bary = (-1.0) ** k * np.sin(theta)
    return nodes, bary


def _barycentric_matrix(nodes, bary, y):
    """ell_r(y) for all r; shape (len(y), len(nodes))."""
    diff = y[:, None] - nodes[None, :]
    exact = np.isclose(diff, 0.0, atol=0.0)
    diff = np.where(exact, 1.0, diff)
    terms = bary[None, :] / diff
    out = terms / np.sum(terms, axis=1, keepdims=True)
    hit = exact.any(axis=1)
    if np.any(hit):
        out[hit] = exact[hit].astype(float)
    return out


def density_moments(amp: MomentumAmplitude, pulse: LaserPulse, t: float,
                    box: Box,
                    settings: SynthesisSettings | None = None) -> DensityMoments:
    """z-integrated transverse density and first moments over the box.

    Exact Volkov evolution (valid mid-pulse); the z window is a conditional
    box, so the density is meaningful up to the caller's normalization.
    """
    st = settings or SynthesisSettings()
    beam = amp.beam
    p_perp = amp.p_perp
    dt_disp = t - amp.t_ref

    # fine momentum grid and conjugate z grid
    p_lo = beam.p_par - st.p_span * beam.sigma
    p_hi = beam.p_par + st.p_span * beam.sigma
    kappa_pad = 2.0 * abs(pulse.A0) * p_perp / max(
        _energies(p_lo, p_perp) + C * p_lo, 1e-30) + 1.0
    bandwidth = (p_hi - p_lo) + kappa_pad
    dz = box.dz or (2.0 * math.pi / (st.band_safety * bandwidth))
    n_z = int(math.ceil(2.0 * box.z_half / dz)) + 1
    dz = 2.0 * box.z_half / (n_z - 1)  # snap so the grid ends at the box edge
    z = box.z_center - box.z_half + dz * np.arange(n_z)
    w_z = np.full(n_z, dz)
    w_z[0] = w_z[-1] = 0.5 * dz  # trapezoid: the box is a hard window

    # chirp Nyquist: |z - v(p) dt| Delta_p < pi over the whole window
    v_lo, v_hi = (C**2 * p_lo / _energies(p_lo, p_perp),
                  C**2 * p_hi / _energies(p_hi, p_perp))
    m_z = max(abs(z[0] - v_lo * dt_disp), abs(z[0] - v_hi * dt_disp),
              abs(z[-1] - v_lo * dt_disp), abs(z[-1] - v_hi * dt_disp),
              2.0 * box.z_half)
    nfft = 1
    min_nfft = max(int(1.25 * n_z),
                   int(2.0 * math.pi / (dz * (beam.sigma / 12.0))),
                   int(2.6 * m_z / dz) + 1)
    while nfft < min_nfft:
        nfft *= 2
    dp = 2.0 * math.pi / (nfft * dz)
    n_pf = int(math.ceil((p_hi - p_lo) / dp)) + 1
    if n_pf > nfft:
        raise ValueError("momentum grid exceeds FFT length; enlarge dz")
    p_f = p_lo + dp * np.arange(n_pf)
    eps_f = _energies(p_f, p_perp)
    den_f = eps_f + C * p_f
    y_f = 1.0 / den_f

    # Chebyshev rank from the worst-case Volkov phase spread across y
    s_scale = float(p_perp * np.max(np.abs(pulse.IA_table))
                    + np.max(np.abs(pulse.IA2_table)) / (2.0 * C))
    # include post-pulse linear growth up to the latest xi in this box
    xi_hi = C * t + z[-1]
    if xi_hi > pulse.xi_max:
        extra = xi_hi - pulse.xi_max
        s_scale += (p_perp * abs(pulse.A0) + pulse.A0**2 / (2.0 * C)) * extra
    spread = s_scale * (y_f.max() - y_f.min())
    rank = max(6, int(math.ceil(0.6 * spread)) + st.cheb_margin)
    if rank > st.max_cheb:
        raise ValueError(
            f"Volkov phase spread across the momentum grid is {spread:.1f} "
            f"rad (needs interpolation rank {rank} > {st.max_cheb}): this "
            "intensity/momentum-spread combination is outside the synthesis "
            "engine's envelope; reduce the field, the packet width, or the "
            "momentum span")
    y_nodes, y_bary = _chebyshev_nodes_weights(y_f.min(), y_f.max(), rank)
    ell = _barycentric_matrix(y_nodes, y_bary, y_f)      # (n_pf, rank)

    # harmonic spinor profiles on the fine grid
    profiles: dict[int, np.ndarray] = {}
    for l, s, gamma in amp.harmonic_profiles(p_f):
        a_stack = a_coefficients(p_f, p_perp, s).stacked()  # (3, n_pf, 4)
        for i, k in enumerate((-1, 0, 1)):
            h = l + k
            term = gamma[:, None] * a_stack[i] / math.sqrt(2.0)
            profiles[h] = profiles.get(h, 0.0) + term
    harmonics = sorted(profiles)
    n_h = len(harmonics)

    # free dispersive transforms T, U per (harmonic, node, component)
    disp = np.exp(-1j * eps_f * dt_disp + 1j * p_f * z[0]) * dp
    t_store = np.empty((n_h, rank, 4, n_z), dtype=complex)
    u_store = np.empty_like(t_store)
    base = np.exp(1j * p_lo * (z - z[0]))
    for ih, h in enumerate(harmonics):
        psi_h = profiles[h]                         # (n_pf, 4)
        nu_h = psi_h @ LIGHTFRONT_MATRIX.T          # N @ psi per row
        for r in range(rank):
            gt = (ell[:, r] * disp)[:, None] * psi_h
            gu = (ell[:, r] * disp * y_f / 2.0)[:, None] * nu_h
            ft = np.fft.ifft(gt, n=nfft, axis=0) * nfft
            fu = np.fft.ifft(gu, n=nfft, axis=0) * nfft
            t_store[ih, r] = (base * ft[:n_z].T)
            u_store[ih, r] = (base * fu[:n_z].T)

    # assemble K(phi, z, comp) chunk-wise and accumulate Gram matrices
    phi = np.arange(st.n_phi) * (2.0 * math.pi / st.n_phi)
    cosphi = np.cos(phi)
    e_h = {h: np.exp(1j * h * phi) for h in harmonics}
    center_phase = np.exp(1j * p_perp * cosphi * box.x_center)
    q0 = np.zeros((st.n_phi, st.n_phi), dtype=complex)
    q1 = np.zeros_like(q0)
    q2 = np.zeros_like(q0)
    for i0 in range(0, n_z, st.z_chunk):
        sl = slice(i0, min(i0 + st.z_chunk, n_z))
        xi_c = C * t + z[sl]
        ia, ia2 = pulse.phase_integrals(xi_c)
        a_c = pulse.vector_potential(xi_c)
        s_field = (p_perp * np.outer(cosphi, ia)
                   + ia2[None, :] / (2.0 * C))      # (n_phi, n_zc)
        k_chunk = np.zeros((st.n_phi, sl.stop - sl.start, 4), dtype=complex)
        for r in range(rank):
            w_r = np.exp(-1j * s_field * y_nodes[r])
            block = np.zeros_like(k_chunk)
            for ih, h in enumerate(harmonics):
                tu = (t_store[ih, r][:, sl] + a_c[None, :] * u_store[ih, r][:, sl]).T
                block += e_h[h][:, None, None] * tu[None, :, :]
            k_chunk += w_r[:, :, None] * block
        k_chunk *= center_phase[:, None, None]
        kc = k_chunk.reshape(st.n_phi, -1)
        wz = w_z[sl]
        kw = (k_chunk * wz[None, :, None]).reshape(st.n_phi, -1)
        kz = (k_chunk * (wz * z[sl])[None, :, None]).reshape(st.n_phi, -1)
        kz2 = (k_chunk * (wz * z[sl] ** 2)[None, :, None]).reshape(st.n_phi, -1)
        q0 += kc.conj() @ kw.T
        q1 += kc.conj() @ kz.T
        q2 += kc.conj() @ kz2.T

    # transverse stage
    ax = np.linspace(box.x_center - box.half_xy, box.x_center + box.half_xy,
                     box.n_xy)
    ay = np.linspace(-box.half_xy, box.half_xy, box.n_xy)
    ux = ax - box.x_center
    ex = np.exp(1j * p_perp * np.outer(ux, cosphi))
    ey = np.exp(1j * p_perp * np.outer(ay, np.sin(phi)))
    pref = math.sqrt(p_perp) * (2.0 * math.pi) ** -1.5 * (2.0 * math.pi / st.n_phi)
    e_mat = (ex[:, None, :] * ey[None, :, :]).reshape(-1, st.n_phi)

    def quad_form(q):
        return np.real(np.sum((e_mat.conj() @ q) * e_mat, axis=1))

    rho = quad_form(q0)
    z_num = quad_form(q1)
    z2_num = quad_form(q2)
    rho = rho.reshape(box.n_xy, box.n_xy) * pref**2
    z_num = z_num.reshape(box.n_xy, box.n_xy) * pref**2
    z2_num = z2_num.reshape(box.n_xy, box.n_xy) * pref**2

    da = (ax[1] - ax[0]) * (ay[1] - ay[0])
    norm = float(np.sum(rho) * da)
    xg, yg = np.meshgrid(ax, ay, indexing="ij")
    x_mean = float(np.sum(xg * rho) * da / norm)
    y_mean = float(np.sum(yg * rho) * da / norm)
    z_mean = float(np.sum(z_num) * da / norm)
    z2_mean = float(np.sum(z2_num) * da / norm)
    return DensityMoments(ax, ay, rho, norm, x_mean, y_mean, z_mean,
                          max(z2_mean - z_mean**2, 0.0), time=t,
                          znum_xy=z_num, z2num_xy=z2_num)
