"""Independent reference values for the unit tests.

Every number frozen into the C++ tests that is not a one-line closed form is
produced here with mpmath (extended precision) or scipy adaptive quadrature. This
script does not share any code with the library.

    python3 tests/oracles/reference_values.py
"""
import math

import mpmath as mp
from numpy.polynomial.hermite import hermval
from scipy.integrate import quad

mp.mp.dps = 25

HBAR = mp.mpf("1.054571817e-34")
QE = mp.mpf("1.602176634e-19")
ME = mp.mpf("9.1093837015e-31")
C = mp.mpf("299792458")


def field_params(tesla):
    lam_c = HBAR / (ME * C)
    L = mp.sqrt(HBAR / (QE * tesla))
    b = mp.sqrt(2) * lam_c / L
    kappa = HBAR * QE * tesla / (ME * 2 * ME * C**2)
    return lam_c, L, b, kappa


def psi(n, xi):
    """Normalized oscillator function via mpmath Hermite polynomials."""
    cn = mp.sqrt(2**n * mp.factorial(n) * mp.sqrt(mp.pi))
    return mp.hermite(n, xi) * mp.exp(-xi**2 / 2) / cn


def packet_y(y, dy):
    return (mp.pi * dy**2) ** mp.mpf(-0.25) * mp.exp(-y**2 / (2 * dy**2))


def g_x(kx, dx, k0x):
    return (dx**2 / mp.pi) ** mp.mpf(0.25) * mp.exp(-dx**2 * (kx - k0x) ** 2 / 2)


def h(n, kx, L, dy):
    # overlap of the y profile with the oscillator centred at y = kx L^2
    f = lambda y: packet_y(y, dy) * psi(n, y / L - kx * L) / mp.sqrt(L)
    c = kx * L**2
    return mp.quad(f, [-mp.inf, c - 10 * L, c, c + 10 * L, mp.inf])


def main():
    print("== model params ==")
    for B in (mp.mpf("2e9"), mp.mpf(100)):
        lam_c, L, b, kappa = field_params(B)
        hw_c_ev = HBAR * QE * B / ME / QE
        print(f"B={B}: b={b} kappa={kappa} L_m={L} L_over_lamc={L/lam_c} hbar_wc_eV={hw_c_ev}")

    print("== landau ==")
    b = mp.mpf("0.952")
    print("E(2,1,0.952) =", mp.sqrt(1 + 2 * b**2 + 1))
    E1 = mp.sqrt(2)
    N = mp.sqrt(2 * E1**2 - 2 * E1)
    print("N(1,-1,0,b=1) =", N, " chi =", (-E1 + 1) / N)

    print("== g_z oracle: d_z = 1.3, kz = 1/d_z ==")
    dz = mp.mpf("1.3")
    kz = 1 / dz
    fz = lambda z: (mp.pi * dz**2) ** mp.mpf(-0.25) * mp.exp(-z**2 / (2 * dz**2))
    re = mp.quad(lambda z: fz(z) * mp.cos(kz * z), [-mp.inf, 0, mp.inf]) / mp.sqrt(2 * mp.pi)
    im = mp.quad(lambda z: fz(z) * mp.sin(kz * z), [-mp.inf, 0, mp.inf]) / mp.sqrt(2 * mp.pi)
    print("g_z =", re, im)

    print("== F table, Fig. 2(b)-like packet ==")
    kappa = mp.mpf("1.05")
    b = 2 * mp.sqrt(kappa)
    L = mp.sqrt(2) / b
    dy = L
    dx = mp.mpf("0.9") * dy
    k0x = mp.sqrt(2) / L
    print("b =", b, " L =", L)
    for n in range(9):
        print(f"F[{n}] = {g_x(k0x, dx, k0x) * h(n, k0x, L, dy)}")

    print("== U band (nested scipy quadrature over kx, y) ==")
    Lf, dyf, dxf, k0f = float(L), float(dy), float(dx), float(k0x)

    def psi_f(n, xi):
        coef = [0] * n + [1]
        norm = math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))
        return hermval(xi, coef) * math.exp(-xi * xi / 2) / norm

    def h_f(n, kx):
        c = kx * Lf**2
        f = lambda y: (math.pi * dyf**2) ** -0.25 * math.exp(-y * y / (2 * dyf**2)) * psi_f(n, y / Lf - kx * Lf) / math.sqrt(Lf)
        return quad(f, c - 14 * Lf - 14 * dyf, c + 14 * Lf + 14 * dyf, points=[0.0, c], limit=200, epsabs=1e-15, epsrel=1e-13)[0]

    def gx_f(kx):
        return (dxf**2 / math.pi) ** 0.25 * math.exp(-dxf**2 * (kx - k0f) ** 2 / 2)

    lo, hi = k0f - 12 / dxf, k0f + 12 / dxf
    for n in range(6):
        u = quad(lambda kx: gx_f(kx) ** 2 * h_f(n, kx) * h_f(n + 1, kx), lo, hi, points=[0.0, k0f], limit=200, epsabs=1e-14, epsrel=1e-12)[0]
        print(f"U[{n},{n+1}] = {u:.15g}")
    u00 = quad(lambda kx: gx_f(kx) ** 2 * h_f(0, kx) ** 2, lo, hi, points=[0.0, k0f], limit=200, epsabs=1e-14, epsrel=1e-12)[0]
    print(f"U[0,0] = {u00:.15g}")

    print("== 3+1 time integrals, B = 2e9 T, d_z = 2, n = 0, t = 5 ==")
    _, _, b, _ = field_params(mp.mpf("2e9"))
    dz = mp.mpf(2)
    t = mp.mpf(5)
    w = lambda k: dz / mp.sqrt(mp.pi) * mp.exp(-dz**2 * k**2)
    E = lambda n, k: mp.sqrt(1 + n * b**2 + k**2)
    n = 0
    pts = [-8, -4, -2, 0, 2, 4, 8]
    icp = mp.quad(lambda k: (1 + E(n, k) / E(n + 1, k)) * w(k) * mp.cos((E(n + 1, k) - E(n, k)) * t), pts)
    icm = mp.quad(lambda k: (1 - E(n, k) / E(n + 1, k)) * w(k) * mp.cos((E(n + 1, k) + E(n, k)) * t), pts)
    isp = mp.quad(lambda k: (1 / E(n, k) + 1 / E(n + 1, k)) * w(k) * mp.sin((E(n + 1, k) - E(n, k)) * t), pts)
    ism = mp.quad(lambda k: (1 / E(n, k) - 1 / E(n + 1, k)) * w(k) * mp.sin((E(n + 1, k) + E(n, k)) * t), pts)
    print("b =", b)
    print("Ic+ =", icp, "\nIc- =", icm, "\nIs+ =", isp, "\nIs- =", ism)

    print("== ion mapping ==")
    eta = mp.mpf("0.06")
    wt = 2 * mp.pi * 68000
    delta = mp.mpf("96e-10")
    for k in ("16.65", "1.05", "0.116"):
        om = eta * wt / mp.sqrt(mp.mpf(k))
        print(f"kappa={k}: Omega/2pi = {om / (2 * mp.pi)} Hz")
    om = 2 * mp.pi * 1000
    c_sim = 2 * eta * delta * wt
    print("c_sim =", c_sim, " lambda_c_sim =", c_sim / om, " ratio to delta =", c_sim / om / delta)
    u = mp.mpf("1.66053906660e-27")
    m_ca = mp.mpf("39.962590863") * u - ME
    nu = HBAR / (2 * m_ca * delta**2)
    print("nu/2pi (Ca40+) =", nu / (2 * mp.pi))


if __name__ == "__main__":
    main()
