"""Where the moduli spaces on the surface and on the 4-fold agree.

Prints a grid per geometry: I = isomorphic (values computed by the engine
are the 4-fold invariants), P = proper but not known isomorphic, N =
non-proper, . = empty.
"""
from stablepairs import golden
from stablepairs.classify import Status, classify

CODE = {Status.ISO_PROPER: "I", Status.PROPER_NOT_ISO: "P", Status.NON_PROPER: "N", Status.EMPTY: ".", Status.UNKNOWN: "?"}


def main(cap=5, n_max=3):
    for gid in golden.geometry_ids():
        S, L1, L2 = golden.geometry(gid)
        print(f"\n{gid}")
        for n in range(n_max + 1):
            print(f" n={n}")
            if S.picard_rank == 1:
                print("   " + " ".join(CODE[classify(S, L1, L2, S.divisor((d,)), n).status] for d in range(1, cap + 1)))
                continue
            for d1 in range(cap + 1):
                cells = [CODE[classify(S, L1, L2, S.divisor((d1, d2)), n).status] for d2 in range(cap + 1)]
                print(f"   {d1}: " + " ".join(cells))


if __name__ == "__main__":
    main()
