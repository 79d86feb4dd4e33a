"""Write the bundled fixtures as JSON instance files next to this script."""
import json
from pathlib import Path

from regsep.cli import print_instance
from regsep.fixtures import (
    counter_loop,
    dyck_acceptor,
    empty_vass,
    lasso_automaton,
    star_then_bars,
    worked_example,
)

OUT = Path(__file__).parent / "instances"

INSTANCES = {
    "worked_example": worked_example(),
    "dyck1": dyck_acceptor(1),
    "counter_loop": counter_loop(),
    "empty": empty_vass(1),
    "bars": lasso_automaton("", "A1"),
    "a1_bar_bar": lasso_automaton("", "a1 A1^2"),
    "star_then_bars": star_then_bars(),
}


def main():
    OUT.mkdir(exist_ok=True)
    for name, V in INSTANCES.items():
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(print_instance(V), indent=2) + "\n")
        print(path)


if __name__ == "__main__":
    main()
