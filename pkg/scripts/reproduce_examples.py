"""Classify every corpus entry and print the key quantities.

    python3 scripts/reproduce_examples.py [--json] [--only NAME ...]
"""
import argparse
import json
import time
from dataclasses import dataclass, field

from contactlab import corpus
from contactlab.fileio import classification_to_dict
from contactlab.structure import fundamental_form, is_normal, validate


@dataclass
class Config:
    only: list = field(default_factory=list)
    json: bool = False


def run(cfg: Config) -> int:
    names = cfg.only or corpus.names()
    failures = 0
    rows = {}
    for name in names:
        t0 = time.perf_counter()
        entry = corpus.get(name, verify=False)
        problems = corpus.verify_entry(entry)
        rep = corpus.classify_entry(entry)
        s = entry.structure
        rows[name] = {
            "valid": validate(s).ok,
            "Phi": str(fundamental_form(s)),
            "normal": is_normal(s),
            "classification": classification_to_dict(rep),
            "mismatches": problems,
            "seconds": round(time.perf_counter() - t0, 3),
        }
        failures += bool(problems)
        if not cfg.json:
            print(f"== {name} (dim {s.dim})")
            print(f"   Phi    = {rows[name]['Phi']}")
            print(f"   tags   = {', '.join(rep.tags)}")
            print(f"   alpha  = {rep.alpha}, s = {rep.s}")
            if rep.f is not None:
                print(f"   f      = {rep.f}, omega = {rep.omega}")
            if rep.lam is not None:
                print(f"   lambda = {rep.lam}")
            if rep.rigidity is not None:
                print(f"   omega proportional to eta: {rep.rigidity.proportional}")
            for note in rep.notes:
                print(f"   note: {note}")
            print(f"   expected block reproduced: {'yes' if not problems else problems}")
    if cfg.json:
        print(json.dumps(rows, indent=2))
    return 1 if failures else 0


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--only", nargs="*", default=[])
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    raise SystemExit(run(Config(only=a.only, json=a.json)))


if __name__ == "__main__":
    main()
