#!/usr/bin/env python3
"""Regenerate the vendored b-file prefixes in crates/core/tests/fixtures/oeis.

Every sequence is computed from a direct digit or counting definition, not
from the generating functions or recurrences the Rust crate implements, so
the fixtures act as an independent oracle.
"""
import os

TERMS = 200
OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "fixtures", "oeis")


def bits(n):
    """Binary digits of n, least significant first (empty for 0)."""
    out = []
    while n:
        out.append(n & 1)
        n >>= 1
    return out


def e1(n):
    return sum(bits(n))


def e0(n):
    return len(bits(n)) - e1(n)


def v2(n):
    return (n & -n).bit_length() - 1


def fusc(n):
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


def signed_fusc(n, memo={0: 0, 1: 1}):
    if n not in memo:
        h = n // 2
        memo[n] = signed_fusc(h) if n % 2 == 0 else signed_fusc(h + 1) - signed_fusc(h)
    return memo[n]


def in_base(n, base):
    return sum(b * base**i for i, b in enumerate(bits(n)))


# id: (first index, definition)
SEQUENCES = {
    "A001511": (1, lambda n: v2(n) + 1),
    "A038712": (1, lambda n: n ^ (n - 1)),
    "A035263": (1, lambda n: (v2(n) + 1) % 2),
    "A006519": (1, lambda n: n & -n),
    "A001316": (0, lambda n: 2 ** e1(n)),
    "A048883": (0, lambda n: 3 ** e1(n)),
    "A000120": (0, e1),
    "A023416": (1, e0),
    "A070939": (1, lambda n: len(bits(n))),
    "A037861": (1, lambda n: e0(n) - e1(n)),
    "A061313": (0, lambda n: 2 * e0(n) + e1(n)),
    "A000027": (1, lambda n: n),
    "A035327": (1, lambda n: (1 << len(bits(n))) - 1 - n),
    "A003817": (0, lambda n: (1 << len(bits(n))) - 1),
    "A065359": (0, lambda n: sum((-1) ** i * b for i, b in enumerate(bits(n)))),
    "A083905": (0, lambda n: sum((-1) ** i * (1 - b) for i, b in enumerate(bits(n)))),
    "A030300": (0, lambda n: len(bits(n + 1)) % 2),
    "A005836": (1, lambda n: in_base(n - 1, 3)),
    "A000695": (0, lambda n: in_base(n, 4)),
    "A002487": (0, fusc),
    "A005590": (0, signed_fusc),
    "A006046": (0, lambda n: sum(2 ** e1(k) for k in range(n))),
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, (start, f) in SEQUENCES.items():
        path = os.path.join(OUT, f"{name}.txt")
        with open(path, "w") as fh:
            fh.write(f"# {name}, first {TERMS} terms from index {start}\n")
            for n in range(start, start + TERMS):
                fh.write(f"{n} {f(n)}\n")


if __name__ == "__main__":
    main()
