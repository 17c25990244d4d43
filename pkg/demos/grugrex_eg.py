"""Build the graph E_G of the chain ultragraph over N and check its generator family."""

from leavitt.analysis import check_family
from leavitt.catalog import grugrex
from leavitt.constructions import build_EG, lex3
from leavitt.dsl import print_structure


def main():
    ug = grugrex()
    eg = build_EG(ug, window=4)
    print("sigma within the window:")
    for v, word in sorted(eg.sigma.items()):
        print(f"  {ug.label(v)} -> {word}")
    for k, e in enumerate(ug.edges[:4]):
        print(f"X({e.name}) = {eg.x_table[k]}")
    print()
    print(print_structure(eg.graph))
    report = check_family(lex3(eg), "ExL")
    print(report.to_text().splitlines()[0])
    for w in eg.warnings[:3]:
        print("warning:", w)


if __name__ == "__main__":
    main()
