"""Euler numbers of twisted tangent bundles on Hilbert schemes of points.

For each geometry, localization gives int e(T_{S^[m]}(L1)) for m <= 4, which
should match prod_k (1-q^k)^(-(e(S) - L1.L2)).  Then every nonzero reference
invariant is compared in absolute value with the number at its own m.
"""
from stablepairs import golden
from stablepairs.localization import co_exponent, co_product_series, co_series, make_request, co_coincidence_report


def main():
    for gid in golden.geometry_ids():
        S, L1, L2 = golden.geometry(gid)
        e = co_exponent(S, L1, L2)
        series = co_series(S, L1, 4)
        product = co_product_series(e, 4)
        print(f"{gid}: exponent {e}, localization {[int(x) for x in series]}, product {product}")
        rows = []
        for entry in golden.entries(gid, computable_only=True):
            if entry.value == 0:
                continue
            rep = co_coincidence_report(make_request(S, L1, L2, entry.beta, entry.n))
            rows.append(rep.note)
            print(f"    beta={entry.beta} n={entry.n} P={rep.value} m={rep.m} CO={rep.co_number} {rep.note}")
        print(f"  {rows.count('agree')}/{len(rows)} nonzero entries agree in absolute value\n")


if __name__ == "__main__":
    main()
