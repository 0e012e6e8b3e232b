"""Reference constants frozen into the C++ tests.

Independent of the library: values come from mpmath at 40 significant digits,
class numbers and units from brute-force enumeration.  Re-run with
`python3 tests/oracles/reference_values.py` to reproduce the printed table.
"""
import math
import mpmath as mp

mp.mp.dps = 40


def kron(a, n):
    # brute-force Kronecker via Euler's criterion on each odd prime factor
    if n == 0:
        raise ValueError
    res = 1
    if n < 0:
        n = -n
        if a < 0:
            res = -res
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            res = -res
    p = 3
    while n > 1:
        if p * p > n:
            p = n
        while n % p == 0:
            n //= p
            r = pow(a % p, (p - 1) // 2, p)
            if r == 0:
                return 0
            res *= 1 if r == 1 else -1
        p += 2
    return res


def is_fundamental(D):
    def squarefree(m):
        m = abs(m)
        k = 2
        while k * k <= m:
            if m % (k * k) == 0:
                return False
            k += 1
        return True
    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def L(s, D):
    q = abs(D)
    return mp.dirichlet(s, [kron(D, a) if a else 0 for a in range(q)])



def L_half_smoothed(D):
    # odd primitive real character: L(1/2) = (2 / Gamma(3/4)) sum chi(n) n^{-1/2} Gamma(3/4, pi n^2 / q)
    q = abs(D)
    N = int(8 * mp.sqrt(q)) + 10
    return 2 * mp.fsum(kron(D, n) * mp.gammainc(0.75, mp.pi * n * n / q) / mp.sqrt(n) for n in range(1, N)) / mp.gamma(0.75)

def Lprime1(D):
    # L'(1) = (1/q) sum chi(a) [log q * psi(a/q) - gamma_1(a/q)] via generalized Stieltjes constants
    q = abs(D)
    return sum(kron(D, a) * (mp.log(q) * mp.digamma(mp.mpf(a) / q) - mp.stieltjes(1, mp.mpf(a) / q))
               for a in range(1, q) if kron(D, a)) / q


def forms_h(D):
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if c == a and b < 0:
                continue
            h += 1
        a += 1
    return h


def pell(d):
    # smallest y > 0 with d*y^2 +- 4 (or +-1) a square
    four = 4 if d % 4 == 1 else 1
    y = 1
    while True:
        for sgn in (-1, 1):
            t = d * y * y + sgn * four
            if t > 0:
                x = math.isqrt(t)
                if x * x == t:
                    return x, y, sgn
        y += 1


def narrow_cycles(D):
    # count cycles of reduced indefinite forms, i.e. the narrow class number
    r = math.isqrt(D)
    sq = mp.sqrt(D)
    forms = set()
    for a in range(-D, D + 1):
        if a == 0:
            continue
        for b in range(1, r + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if sq - b < 2 * abs(a) < sq + b:
                forms.add((a, b, c))
    def rho(f):
        a, b, c = f
        cc = abs(c)
        # b' = -b mod 2c, sqrt(D) - 2|c| < b' < sqrt(D)
        bp = -b
        while not (sq - 2 * cc < bp < sq):
            bp += 2 * cc if bp <= sq - 2 * cc else -2 * cc
        return (c, bp, (bp * bp - D) // (4 * c))
    seen = set()
    cycles = 0
    for f in sorted(forms):
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = rho(g)
    return cycles


if __name__ == "__main__":
    print("zeta(1/2)", mp.zeta(0.5))
    for s in (mp.mpf(1) / 2, mp.mpf(3) / 4, mp.mpf(3) / 2, 2, 3):
        print("zeta", s, mp.zeta(s))
    print("zeta(2,1/2)", mp.zeta(2, 0.5))
    print("catalan", mp.catalan)
    print("L(1/2,-4)", L(mp.mpf(1) / 2, -4))
    print("L(1/2,-3)", L(mp.mpf(1) / 2, -3))
    print("L(1/2,-4)*zeta(1/2)", L(mp.mpf(1) / 2, -4) * mp.zeta(0.5))
    print("L(1/2,-3)*zeta(1/2)", L(mp.mpf(1) / 2, -3) * mp.zeta(0.5))
    print("zeta(2)L(2,-4)", mp.zeta(2) * mp.catalan)
    print("L(1,5)", L(1, 5), "L(1,8)", L(1, 8))
    for D in (-4, -3, 5, 8, -7, 12):
        g = mp.euler + Lprime1(D) / L(1, D)
        print("gamma_K", D, g)
    print("L(0.75+2i,-4)", L(mp.mpc(0.75, 2), -4))
    for D in (-100003, -100004, -100007):
        print("L(1/2) smoothed", D, L_half_smoothed(D))
    for D in (-23, -4, -3):
        print("h", D, forms_h(D))
    for d in (2, 5, 94):
        x, y, sgn = pell(d)
        print("pell", d, x, y, sgn)
    for D in (229, 5, 8, 12, 13, 40, 60, 145, 316, 321):
        if not is_fundamental(D):
            continue
        m = D if D % 4 == 1 else D // 4
        x, y, sgn = pell(m)
        hp = narrow_cycles(D)
        h = hp if sgn < 0 else hp // 2
        print("real h", D, "narrow", hp, "norm", sgn, "h", h)
    # an imaginary field near -10^6 with h ~ 900
    D = -1000003
    while not is_fundamental(D):
        D -= 1
    print("deep", D, forms_h(D))
