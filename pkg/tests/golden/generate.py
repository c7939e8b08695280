"""Independent generator for the golden corpus files.

Uses only Python integers and math.comb, never the package itself, so the
frozen files act as an oracle. Run from this directory to regenerate.
"""
import math

N = 2048


def val(x, p):
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def power_indicator(k):
    powers = set()
    e = 1
    while e < N:
        powers.add(e)
        e *= k
    return [int(n in powers) for n in range(N)]


def zagier(upper_offset):
    # a(n) = nu_3 of sum_{j=0}^{n - upper_offset} C(2j, j); the empty sum gives 0
    out = []
    s = 0
    for n in range(N):
        if n - upper_offset >= 0:
            s += math.comb(2 * (n - upper_offset), n - upper_offset)
        out.append(val(s, 3) if s else 0)
    return out


SERIES = {
    "power-indicator-2": power_indicator(2),
    "power-indicator-3": power_indicator(3),
    "geometric-3": [3 ** n for n in range(N)],
    "nu-3-central-binomial-squared": [val(math.comb(2 * n, n) ** 2, 3) for n in range(N)],
    "zagier-sum-to-n": zagier(0),
    "zagier-sum-to-n-minus-1": zagier(1),
    "thue-morse": [bin(n).count("1") % 2 for n in range(N)],
}

if __name__ == "__main__":
    for name, seq in SERIES.items():
        with open(f"{name}.txt", "w") as fh:
            fh.write("\n".join(map(str, seq)) + "\n")
