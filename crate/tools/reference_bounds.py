#!/usr/bin/env python3
"""Independent straight-line reference for the height-bound formulas.

Evaluates every bound flavour with mpmath at 60 decimal digits and freezes a
50-case corpus (plus a few hand-picked golden values) into
crates/core/tests/data/bounds_reference.json.  The Rust implementation is
compared against this file; the two share no code.  Regenerating the file is
deterministic (fixed seed, fixed mpmath precision).
"""

import json
import random
from pathlib import Path

from mpmath import mp, mpf, log, exp, sqrt

mp.dps = 60
DIGITS = 50
SEED = 20260814

OUT = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "data" / "bounds_reference.json"

E_FLOOR = exp(mpf(1)) * (1 + mpf(2) ** -20)


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def underlying_prime(q: int) -> int:
    p = 2
    while p * p <= q:
        if q % p == 0:
            return p
        p += 1
    return q


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = underlying_prime(n)
    while n % p == 0:
        n //= p
    return n == 1


def raise_level(n: int) -> int:
    m = 3 * n if (n & (n - 1)) == 0 else 2 * n
    assert not is_prime_power(m)
    return m


def loglog_floored(x, flags):
    """log(log(x)) with the innermost quantity floored at e*(1+2^-20)."""
    x = mpf(x)
    if x <= exp(mpf(1)):
        flags.add("loglog_floor")
        x = E_FLOOR
    return log(log(x))


def zeta_quantity(d: int):
    dp = max(d, 3)
    return 1201 * (log(dp) / log(log(dp))) ** 3


def theorem1_log(n: int, c, flags):
    phi = totient(n)
    return (
        phi * log(mpf(c))
        + (mpf(3) / 2 * phi + 10) * log(n)
        + (mpf(5) / 2 * phi - 2) * loglog_floored(n, flags)
    )


def log_delta(d0: int, s0: int, abs_disc: int, norms, n: int, flags):
    phi = totient(n)
    ld = d0 * n * log(n) + phi * log(abs_disc)
    out = -d0 * log(d0) + ld / 2 + d0 * phi * log(ld)
    for q in norms:
        out += phi * loglog_floored(q, flags)
    return out


def theorem2_log(d0, s0, abs_disc, norms, p, n, c, flags):
    return (
        2 * s0 * n * log(mpf(c) * d0 * s0 * n * n)
        + 3 * s0 * n * loglog_floored(d0 * n, flags)
        + d0 * n * log(p)
        + log_delta(d0, s0, abs_disc, norms, n, flags)
    )


def extension(d0, s0, abs_disc, norms, n, flags):
    phi = totient(n)
    d = d0 * phi
    s = s0 * phi
    if s < 2:
        flags.add("s_lifted")
        s = 2
    r = s - 1
    log_disc = d0 * n * log(n) + phi * log(abs_disc)
    log_norm_prod = s0 * phi * log(4) + phi * sum(
        (loglog_floored(q, flags) for q in norms), mpf(0)
    )
    return d, s, r, log_disc, log_norm_prod


def regulator_upper_log(d, log_disc, log_norm_prod, c_siegel=1):
    return log(mpf(c_siegel)) - d * log(d) + log_disc / 2 + (d - 1) * log(log_disc) + log_norm_prod


def upsilon(c, r, d, p):
    arch = mpf(c) ** r * d * d * log(2 * d)
    if p <= 1:
        return arch
    fin = (mpf(c) * d) ** (2 * r + 6) * mpf(p) ** d
    return max(arch, fin)


def pipeline_log(d0, s0, abs_disc, norms, p, n, c, flags):
    d, s, r, log_disc, log_norm_prod = extension(d0, s0, abs_disc, norms, n, flags)
    z = zeta_quantity(d)
    rs = exp(regulator_upper_log(d, log_disc, log_norm_prod))
    ups = upsilon(c, r, d, p)
    theta0 = 24 * d * mpf(n) ** 7 * log(2)
    alpha = 4 * d * s * mpf(r) ** (2 * r) * z * mpf(n) ** 8
    theta_prod = mpf(r) ** (2 * r) * z**r * rs
    beta = theta_prod + 188 * d * s * mpf(r) ** (2 * r) * z * mpf(n) ** 8 * log(n)
    c1 = alpha * n * ups * theta0 * theta_prod
    c2 = 48 * alpha * mpf(n) ** 8 * log(2) + beta
    h = 2 * s * c1 * log(c1) / alpha + s * (2 * c2 - beta) / alpha + s * log(2)
    return log(h)


def lambda_one_log(s0, n):
    nn = mpf(n)
    phi = totient(n)
    h = s0 * nn * (
        nn * phi * log(24 * nn**14 + 24 * nn**9)
        + nn * log(48 * nn**2 * (nn**6 + nn + 1))
        + log(2)
    )
    return log(h)


def trivial_log(s, n):
    return log(mpf(3) * s * n)


def fmt(x) -> str:
    return mp.nstr(x, DIGITS, strip_zeros=False)


def build_cases():
    rng = random.Random(SEED)
    pool = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 20, 24, 25, 27, 30]
    norm_pool = [2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27, 49, 121, 169, 343]
    disc_pool = [1, 3, 4, 5, 8, 23, 49, 81, 257, 1000003, 94906249]
    c_pool = [1, 1, 2, 3, 10, 100, 10000]

    cases = []
    for idx in range(50):
        n = rng.choice(pool)
        d0 = rng.randint(1, 6)
        abs_disc = rng.choice(disc_pool)
        norms = sorted(rng.choice(norm_pool) for _ in range(rng.randint(0, 4)))
        # S0 contains every listed finite place (plus archimedean ones)
        s0 = rng.randint(max(1, len(norms)), 5)
        c = rng.choice(c_pool)
        # pinned cases exercising the floor paths, the s-lift, and the goldens
        if idx == 0:
            n, d0, s0, abs_disc, norms, c = 2, 1, 1, 1, [], 1
        elif idx == 1:
            n, d0, s0, abs_disc, norms, c = 6, 1, 1, 1, [], 1
        elif idx == 2:
            n, d0, s0, abs_disc, norms, c = 5, 2, 2, 8, [2], 1
        p = max((underlying_prime(q) for q in norms), default=1)
        flags = set()
        d, s, r, _, _ = extension(d0, s0, abs_disc, norms, n, flags)

        bounds = {
            "theorem1": fmt(theorem1_log(n, c, flags)),
            "theorem2": fmt(theorem2_log(d0, s0, abs_disc, norms, p, n, c, flags)),
            "pipeline": fmt(pipeline_log(d0, s0, abs_disc, norms, p, n, c, flags)),
            "lambda_one": fmt(lambda_one_log(s0, n)),
            "trivial_regime": fmt(trivial_log(s, n)),
        }
        m_raised = None
        if is_prime_power(n):
            m_raised = raise_level(n)
            bounds["theorem3_shape1"] = fmt(theorem1_log(m_raised, c, flags))
            bounds["theorem3_shape2"] = fmt(
                theorem2_log(d0, s0, abs_disc, norms, p, m_raised, c, flags)
            )
        cases.append(
            {
                "idx": idx,
                "n": n,
                "d0": d0,
                "s0": s0,
                "abs_disc": abs_disc,
                "finite_norms": norms,
                "p": p,
                "c_baker": c,
                "m_raised": m_raised,
                "log_bounds": bounds,
                "flags": sorted(flags),
            }
        )
    return cases


def build_goldens():
    flags = set()
    ln10 = log(mpf(10))
    g = {
        "theorem1_n6_c1_log10": fmt(theorem1_log(6, 1, flags) / ln10),
        "theorem2_q_sinf_n6_log10": fmt(theorem2_log(1, 1, 1, [], 1, 6, 1, flags) / ln10),
        "delta_q_sinf_n6": fmt(exp(log_delta(1, 1, 1, [], 6, flags))),
        "zeta_d1": fmt(zeta_quantity(1)),
        "regulator_upper_d2_disc8": fmt(mpf(2) ** -2 * sqrt(8) * log(8)),
        "upsilon_arch_c1_r1_d1": fmt(upsilon(1, 1, 1, 1)),
        "upsilon_finite_c1_r1_d1_p2": fmt(upsilon(1, 1, 1, 2)),
        "hw_s2_n2_logq1": fmt(2 * 2 * mpf(2) ** 8 * 1 + 94 * 2 * mpf(2) ** 8 * log(2)),
        "lambda_one_n6_s1_log": fmt(lambda_one_log(1, 6)),
    }
    assert not flags
    return g


def main():
    doc = {
        "generator": "tools/reference_bounds.py",
        "seed": SEED,
        "digits": DIGITS,
        "note": "values are natural logs of the height bounds unless the key says log10",
        "goldens": build_goldens(),
        "cases": build_cases(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
