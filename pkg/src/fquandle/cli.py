"""Command-line interface.

Exit codes: 0 success or property holds, 1 property fails, 2 usage error,
3 input-format error.  JSON outputs carry a ``generated_at`` timestamp unless
``--no-timestamp`` is given; text and CSV outputs carry it as a ``#`` line.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import sys
from dataclasses import dataclass, field

from . import cohomology as co
from . import reference
from .classify import OrderCapError, classify, filter_no_quandle, Catalog
from .core import FTable, LEVELS, TableFormatError, validate
from .envelope import enveloping_presentation
from .extensions import (DynamicalCocycle, ModuleData, CocycleShapeError, build_extension,
                         check_dynamical_cocycle, extension_structure_map)
from .morphisms import NotAnAutomorphismError, twist

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputFormatError(Exception):
    pass


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "json"
    exhaustive: bool = False
    timestamp: bool = True
    allow_large: bool = False


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputFormatError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{path}: invalid JSON ({e})") from e


def load_table(path: str) -> FTable:
    """FTable JSON object, or a bare list of 0-based rows."""
    obj = load_json(path)
    try:
        if isinstance(obj, list):
            return FTable.from_rows(obj)
        return FTable.from_json_obj(obj)
    except (TableFormatError, KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"{path}: not an f-table ({e})") from e


def load_cocycle(path: str) -> DynamicalCocycle:
    """A DynamicalCocycle object, or ModuleData (recognized by its ``eta`` key)."""
    obj = load_json(path)
    try:
        if isinstance(obj, dict) and "eta" in obj:
            return ModuleData.from_json_obj(obj).to_cocycle()
        return DynamicalCocycle.from_json_obj(obj)
    except (CocycleShapeError, KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"{path}: not a cocycle ({e})") from e


def _stamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def render(cfg: RunConfig, payload: dict, rows: list[dict] | None = None, text: str | None = None) -> str:
    if cfg.format == "json":
        obj = dict(payload)
        if cfg.timestamp:
            obj = {"generated_at": _stamp(), **obj}
        return json.dumps(obj, indent=2) + "\n"
    head = f"# generated_at {_stamp()}\n" if cfg.timestamp else ""
    if cfg.format == "csv":
        rows = rows if rows is not None else [payload]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return head + buf.getvalue()
    return head + (text if text is not None else json.dumps(payload, indent=2)) + "\n"


def emit(cfg: RunConfig, content: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(content)
    else:
        sys.stdout.write(content)


def cmd_check(cfg: RunConfig) -> int:
    t = load_table(cfg.inputs[0])
    level = cfg.params["level"]
    rep = validate(t, level, exhaustive=cfg.exhaustive)
    payload = {"order": t.order, **rep.to_json_obj()}
    lines = [f"level {level}: {'passed' if rep.passed else 'failed'}"]
    lines += [f"  axiom {a} witness {tuple(w)}" for a, w in rep.violations]
    rows = [{"level": level, "passed": rep.passed,
             "violations": ";".join(f"{a}:{tuple(w)}" for a, w in rep.violations)}]
    emit(cfg, render(cfg, payload, rows, "\n".join(lines)))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_classify(cfg: RunConfig) -> int:
    n = cfg.params["order"]
    try:
        cat = classify(n, allow_large=cfg.allow_large)
    except OrderCapError as e:
        raise UsageError(str(e)) from e
    if cfg.params.get("filter") == "no-quandle":
        cat = filter_no_quandle(cat)
    summary = cat.summary_row()
    summary["count"] = cat.twisted_class_count
    summary["labeled_count"] = cat.labeled_count
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(cat.to_json_obj(), fh, indent=2)
    text = (f"order {n}: {cat.labeled_count} labeled tables, {cat.iso_class_count} iso classes, "
            f"{cat.twisted_class_count} twisted classes ({cat.no_quandle_count} without a quandle)")
    saved = RunConfig(**{**cfg.__dict__, "out": None})
    emit(saved, render(saved, summary, [summary], text))
    return EXIT_OK


def _scalar_module(p: dict) -> co.ScalarModule:
    try:
        return co.ScalarModule(p["mod"], p["T"], p["S"])
    except ValueError as e:
        raise UsageError(str(e)) from e


def cmd_cohom(cfg: RunConfig) -> int:
    p = cfg.params
    mod = _scalar_module(p)
    t = load_table(cfg.inputs[0])
    if not validate(t, "quandle").passed:
        raise UsageError("cohomology needs a table that validates at quandle level")
    results, rows, ok = [], [], True
    for n in range(1, min(p["max_degree"], 2) + 1):
        res = co.cohomology(t, mod, n, p["convention"], p["cochains"])
        entry = res.to_json_obj()
        try:
            brute = len(co.brute_force_kernel(t, mod, n, p["convention"]))
            entry["oracle_kernel_size"] = brute
            entry["oracle_agrees"] = brute == res.kernel_size
            ok = ok and entry["oracle_agrees"]
        except co.SearchSpaceError:
            entry["oracle_agrees"] = None
        results.append(entry)
        rows.append({"degree": n, "modulus": mod.m, "T": mod.T, "S": mod.S,
                     "convention": p["convention"], "dimension": res.dimension,
                     "divisors": res.divisors, "kernel_size": res.kernel_size,
                     "is_complex": res.is_complex, "oracle_agrees": entry["oracle_agrees"]})
    payload = {"table": t.to_json_obj(), "module": mod.to_json_obj(),
               "complex_holds": co.verify_complex(t, mod, p["convention"], p["cochains"]),
               "results": results}
    if p.get("paper_compare"):
        payload["reference_comparison"] = reference.compare_all(p["convention"])
    text = "\n".join(
        f"H^{r['degree']}: dimension {r['dimension']} divisors {r['divisors']} "
        f"kernel {r['kernel_size']} oracle {r['oracle_agrees']} complex {r['is_complex']}"
        for r in rows)
    emit(cfg, render(cfg, payload, rows, text))
    return EXIT_OK if ok else EXIT_FAIL


def _parse_perm(s: str, n: int) -> list[int]:
    try:
        phi = [int(v) for v in s.replace(",", " ").split()]
    except ValueError as e:
        raise UsageError(f"bad permutation {s!r}") from e
    if len(phi) != n:
        raise UsageError(f"permutation has {len(phi)} entries, table order is {n}")
    return phi


def _table_output(cfg: RunConfig, t: FTable, extra: dict) -> None:
    payload = {**extra, **t.to_json_obj()}
    rows = [{"row": i, **{str(j): v for j, v in enumerate(r)}} for i, r in enumerate(t.rows())]
    emit(cfg, render(cfg, payload, rows, str(t)))


def cmd_twist(cfg: RunConfig) -> int:
    t = load_table(cfg.inputs[0])
    phi = _parse_perm(cfg.params["phi"], t.order)
    try:
        out = twist(t, phi, check=not cfg.params.get("unchecked"))
    except NotAnAutomorphismError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_FAIL
    _table_output(cfg, out, {"phi": phi})
    return EXIT_OK


def cmd_extend(cfg: RunConfig) -> int:
    base = load_table(cfg.inputs[0])
    c = load_cocycle(cfg.inputs[1])
    if c.base_order != base.order:
        raise InputFormatError("cocycle base order does not match the table")
    level = cfg.params["level"]
    rep = check_dynamical_cocycle(base, c, level, exhaustive=cfg.exhaustive)
    ext = build_extension(base, c)
    ext_rep = validate(ext, level, f=extension_structure_map(base, c))
    _table_output(cfg, ext, {"cocycle_report": rep.to_json_obj(),
                             "extension_report": ext_rep.to_json_obj()})
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_envelope(cfg: RunConfig) -> int:
    t = load_table(cfg.inputs[0])
    pres = enveloping_presentation(t)
    if cfg.format == "gap":
        emit(cfg, pres.to_gap())
        return EXIT_OK
    payload = pres.to_json_obj()
    rows = [{"index": i, "relator": list(w), "freely_trivial": ft}
            for i, (w, ft) in enumerate(zip(pres.relators, pres.freely_trivial))]
    emit(cfg, render(cfg, payload, rows, pres.to_gap().rstrip("\n")))
    return EXIT_OK


def cmd_catalog(cfg: RunConfig) -> int:
    """Summaries per order, or a listing of a saved catalog file."""
    if cfg.inputs:
        obj = load_json(cfg.inputs[0])
        try:
            cats = [Catalog.from_json_obj(obj)]
        except (KeyError, TypeError, ValueError) as e:
            raise InputFormatError(f"not a catalog ({e})") from e
    else:
        try:
            cats = [classify(n, allow_large=cfg.allow_large)
                    for n in range(1, cfg.params["max_order"] + 1)]
        except OrderCapError as e:
            raise UsageError(str(e)) from e
    rows = [c.summary_row() for c in cats]
    lines = []
    for c in cats:
        lines.append(f"order {c.order}: {c.iso_class_count} iso classes, "
                     f"{c.twisted_class_count} twisted classes, {c.no_quandle_count} without a quandle")
        if cfg.inputs:
            for i, cl in enumerate(c.classes):
                flags = [k for k in ("contains_quandle", "is_latin", "is_group_like") if getattr(cl, k)]
                lines.append(f"  class {i}: members {cl.members} {' '.join(flags)}")
    emit(cfg, render(cfg, {"summaries": rows}, rows, "\n".join(lines)))
    return EXIT_OK


COMMANDS = {
    "check": cmd_check, "classify": cmd_classify, "cohom": cmd_cohom, "twist": cmd_twist,
    "extend": cmd_extend, "envelope": cmd_envelope, "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fquandle", description="Finite twisted quandle toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "csv", "text")):
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--out", help="write output here instead of standard output")
        p.add_argument("--no-timestamp", action="store_true", help="omit the generated_at header")

    p = sub.add_parser("check", help="validate a table at an axiom level")
    p.add_argument("file")
    p.add_argument("--level", choices=LEVELS, default="quandle")
    p.add_argument("--exhaustive", action="store_true", help="report every violation")
    common(p)

    p = sub.add_parser("classify", help="enumerate and classify all f-quandles of an order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--filter", choices=["none", "no-quandle"], default="none")
    p.add_argument("--allow-large", action="store_true")
    common(p)

    p = sub.add_parser("cohom", help="cohomology with scalar Z_m coefficients")
    p.add_argument("file")
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--convention", choices=co.CONVENTIONS, default="theorem")
    p.add_argument("--cochains", choices=co.COCHAINS, default="full")
    p.add_argument("--paper-compare", action="store_true",
                   help="add the side-by-side record for the two worked Z_3 examples")
    common(p)

    p = sub.add_parser("twist", help="twist a table by an automorphism")
    p.add_argument("file")
    p.add_argument("--phi", required=True, help='permutation, e.g. "1 0"')
    p.add_argument("--unchecked", action="store_true", help="skip the automorphism check")
    common(p)

    p = sub.add_parser("extend", help="build the extension of a base table by a cocycle")
    p.add_argument("base")
    p.add_argument("cocycle")
    p.add_argument("--level", choices=LEVELS, default="quandle")
    p.add_argument("--exhaustive", action="store_true")
    common(p)

    p = sub.add_parser("envelope", help="enveloping group presentation")
    p.add_argument("file")
    common(p, ("json", "gap", "csv", "text"))

    p = sub.add_parser("catalog", help="class counts per order, or list a saved catalog")
    p.add_argument("file", nargs="?")
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--allow-large", action="store_true")
    common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    d = dict(vars(args))
    command = d.pop("command")
    inputs = [d.pop(k) for k in ("file", "base", "cocycle") if d.get(k) is not None]
    for k in ("file", "base", "cocycle"):
        d.pop(k, None)
    return RunConfig(
        command=command, inputs=inputs, out=d.pop("out"), format=d.pop("format"),
        exhaustive=d.pop("exhaustive", False), timestamp=not d.pop("no_timestamp"),
        allow_large=d.pop("allow_large", False), params=d,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    cfg = config_from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except InputFormatError as e:
        sys.stderr.write(f"input error: {e}\n")
        return EXIT_INPUT
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
