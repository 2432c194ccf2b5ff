"""Generate frozen test fixtures for random monic irreducible polynomials.

Each record holds ascending coefficients, the discriminant, its prime
factors and the field discriminant computed by PARI (cypari package).
The C++ tests only read the frozen file; rerun this script to regenerate.
"""
import argparse
import json
import random

from sympy import Poly, discriminant, factorint, symbols
from cypari import pari

x = symbols("x")


def random_monic(rng, degree, height):
    coeffs = [rng.randint(-height, height) for _ in range(degree)] + [1]
    return Poly(list(reversed(coeffs)), x)


def record(f):
    d = int(discriminant(f))
    dk = pari("nfdisc(Pol([%s]))" % ",".join(str(c) for c in f.all_coeffs()))
    primes = sorted(int(p) for p in factorint(abs(d)))
    return {
        "f": [str(c) for c in reversed(f.all_coeffs())],
        "disc": str(d),
        "disc_primes": [str(p) for p in primes],
        "field_disc": str(int(dk)),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=20240611)
    ap.add_argument("--count", type=int, default=60)
    ap.add_argument("--out", default="tests/fixtures/random_fields.json")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    out, seen = [], set()
    while len(out) < args.count:
        degree = rng.randint(2, 6)
        f = random_monic(rng, degree, 20)
        key = tuple(f.all_coeffs())
        if key in seen or not f.is_irreducible:
            continue
        seen.add(key)
        out.append(record(f))
    # Polynomials with a prime p > deg dividing the discriminant to a power >= 2,
    # for comparing the two local engines.
    local = []
    while len(local) < 24:
        degree = rng.randint(2, 6)
        p = rng.choice([7, 11, 13, 17, 19, 23])
        if p <= degree:
            continue
        # Coefficients divisible by p and a constant term divisible by p^2 make Z[x]/f non-maximal at p.
        coeffs = [p ** rng.randint(1, 2) * rng.randint(-3, 3) for _ in range(degree)] + [1]
        coeffs[0] = p ** rng.randint(2, 4) * rng.choice([-2, -1, 1, 2, 3])
        f = Poly(list(reversed(coeffs)), x)
        d = int(discriminant(f))
        if d == 0 or not f.is_irreducible:
            continue
        r = record(f)
        if int(r["field_disc"]) % p ** 2 == 0 and d % p ** 4 != 0:
            continue
        if d // int(r["field_disc"]) % p != 0:
            continue
        r["p"] = str(p)
        local.append(r)
    with open(args.out, "w") as fh:
        json.dump({"random": out, "local": local}, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
