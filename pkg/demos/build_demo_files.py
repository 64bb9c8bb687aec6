"""Write the JSON inputs used by demos/run_demos.sh."""
import json
from pathlib import Path

from bakit.ba_fixtures import fixture
from bakit.lk_fixtures import lk_fixture
from bakit.proofs_ba import dump_proof
from bakit.proofs_lk import dump_lk
from bakit.semantics import add_root, make_Kstar

HERE = Path(__file__).parent


def main():
    for name in ("cutoff_uniqueness", "zero_add", "unique_with_block"):
        dump_proof(fixture(name).proof, HERE / f"ba_{name}.json")
    for name in ("imp_detour", "double_detour", "ind_context"):
        dump_lk(lk_fixture(name), HERE / f"lk_{name}.json")
    (HERE / "kstar.json").write_text(json.dumps(make_Kstar().to_json(), indent=1) + "\n")
    two = add_root(make_Kstar(), reflexive=False)
    (HERE / "two_node.json").write_text(json.dumps(two.to_json(), indent=1) + "\n")
    (HERE / "cutoff_graph.txt").write_text("((x1 < x2 & y = 0) | x1 = x2 + y) & z = z\n")


if __name__ == "__main__":
    main()
