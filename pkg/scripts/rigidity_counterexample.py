"""A 5-dimensional lc structure whose Lee form is not proportional to eta.

Product of the 3-dimensional example with a plane scaled by exp(2x + z).
Prints the classification and the decomposition omega = alpha + h eta.

    python3 scripts/rigidity_counterexample.py [--json]
"""
import argparse
import json
from dataclasses import dataclass

from contactlab.classify import check_lc_equations, classify
from contactlab.corpus import Candidates
from contactlab.expr import parse
from contactlab.fileio import classification_to_dict, dumps, structure_to_dict
from contactlab.forms import KForm
from contactlab.structure import AlmostContactStructure, validate


@dataclass
class Config:
    json: bool = False
    dump: str | None = None


def build() -> AlmostContactStructure:
    phi = [["0"] * 5 for _ in range(5)]
    phi[1][0], phi[0][1] = "1", "-1"
    phi[3][4], phi[4][3] = "1", "-1"
    g = [["0"] * 5 for _ in range(5)]
    g[0][0] = g[1][1] = "exp(z)"
    g[2][2] = "exp(2*x)"
    g[3][3] = g[4][4] = "exp(2*x + z)"
    return AlmostContactStructure.from_data(("x", "y", "z", "u", "v"), eta={"z": "exp(x)"},
                                            xi={"z": "exp(-x)"}, phi=phi, g=g,
                                            domain=[(0.1, 2.0), (-1, 1), (0.1, 2.0), (-1, 1), (-1, 1)])


def run(cfg: Config) -> int:
    s = build()
    f = parse("1/2*exp(-x)", s.chart)
    omega = KForm.dx(s.chart, "x")
    ok = validate(s).ok and check_lc_equations(s, f, omega).passed
    rep = classify(s)
    if cfg.dump:
        with open(cfg.dump, "w") as fh:
            fh.write(dumps(structure_to_dict(s, Candidates(f, omega), "rigidity_counterexample")))
    if cfg.json:
        print(json.dumps(classification_to_dict(rep), indent=2))
    else:
        print(f"validates and satisfies the lc equations: {ok}")
        print(f"tags: {', '.join(rep.tags)}")
        r = rep.rigidity
        print(f"omega = {rep.omega} = alpha + h eta with alpha = {r.alpha}, h = {r.h}")
        print(f"omega proportional to eta: {r.proportional}")
    return 0 if ok and not rep.rigidity.proportional else 1


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true")
    p.add_argument("--dump", help="write the structure file here")
    a = p.parse_args()
    raise SystemExit(run(Config(json=a.json, dump=a.dump)))


if __name__ == "__main__":
    main()
