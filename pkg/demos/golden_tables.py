"""Reference tables for the six local surfaces, recomputed.

Prints each bundled table next to the engine's value.  Cells marked with a
star are reference-only (the moduli spaces on the surface and the 4-fold
differ there); the engine value is shown anyway for comparison.
"""
import time

from stablepairs import golden
from stablepairs.localization import make_request, stable_pair_invariant


def main():
    mismatches = 0
    for gid in golden.geometry_ids():
        S, L1, L2 = golden.geometry(gid)
        print(f"\n{gid}: {S.name}, L1=({L1}), L2=({L2})")
        for e in golden.entries(gid):
            t0 = time.perf_counter()
            res = stable_pair_invariant(make_request(S, L1, L2, e.beta, e.n))
            dt = time.perf_counter() - t0
            if e.computable and res.value != e.value:
                mismatches += 1
                flag = "MISMATCH"
            else:
                flag = "" if e.computable else "(reference only)"
            beta = ",".join(map(str, e.beta))
            print(f"  beta=({beta:>4}) n={e.n}  table={e.display():>5}  engine={res.value!s:>5}  m={res.m:<2} {dt * 1000:6.1f} ms {flag}")
    print(f"\n{mismatches} mismatches")


if __name__ == "__main__":
    main()
