"""Pin random elements down to a scalar vertex or a cycle polynomial, and show the multipliers."""

import random

from leavitt.analysis import pin_down
from leavitt.catalog import rose, toy
from leavitt.corpus import random_element
from leavitt.engine import GraphEngine, UltraEngine
from leavitt.rings import Q


def main(seed=1):
    rng = random.Random(seed)
    for eng in (GraphEngine(rose(2), Q), UltraEngine(toy(), Q)):
        for _ in range(3):
            x = random_element(eng, rng)
            if x.is_zero():
                continue
            p = pin_down(x)
            print(f"x     = {x}")
            print(f"a     = {p.a}")
            print(f"b     = {p.b}")
            print(f"a x b = {p.a * x * p.b}   ({p.form})  check: {p.check(x)}")
            print()


if __name__ == "__main__":
    main()
