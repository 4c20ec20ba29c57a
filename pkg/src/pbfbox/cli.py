"""Command-line front end: ``pbfbox <command> [flags]``.

Every report embeds the run configuration. Exit status is 0 when every
consistency check passes, 1 when a check fails or the input is rejected,
and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from .boolfun import BooleanFunction, HexParseError
from .gf2n import FieldSpec, default_poly
from .nondecomp import find_type_iiia, find_type_iiib, pbf4_space, type_i_all, type_ii_all
from .pbf import (build_constraints, counting_formulas, first_violation, is_pbf_direct,
                  pbf_space, sample_pbf)
from .sbox import analysis_report, construct_g, sample_rows, summarise_nl
from .tripleset import build_graph, fat_subgraph_stats, graph_stats, has_3_regular_subgraph, t_partition

FORMATS = ("json", "csv", "text")


class InputRejected(Exception):
    """The input parsed but fails a precondition (e.g. not a PBF)."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    poly: str | None
    seed: int
    sample_size: int
    output_format: str
    output_path: str | None
    max_len: int
    verify_paper: bool

    def field(self) -> FieldSpec:
        return FieldSpec(self.n, int(self.poly, 16) if self.poly else 0)

    def to_json(self) -> dict:
        return asdict(self)


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


class Report:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.fields: dict = {}
        self.checks: list[Check] = []
        self.rows: list[dict] | None = None  # tabular payload for csv

    def check(self, name: str, expected, actual):
        self.checks.append(Check(name, expected, actual))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        out = {"config": self.cfg.to_json(), **self.fields}
        out["checks"] = [{"name": c.name, "expected": c.expected, "actual": c.actual, "ok": c.ok}
                         for c in self.checks]
        out["ok"] = self.ok
        return out

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"
        if fmt == "csv":
            rows = self.rows if self.rows is not None else [_flatten(self.fields)]
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
            return buf.getvalue()
        lines = [f"{k}: {v}" for k, v in _flatten(self.fields).items()]
        lines += [f"check {c.name}: {'ok' if c.ok else 'MISMATCH'}" for c in self.checks]
        return "\n".join(lines) + "\n"

    def diff(self) -> str:
        return "".join(f"mismatch {c.name}: expected {c.expected!r}, got {c.actual!r}\n"
                       for c in self.checks if not c.ok)


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = " ".join("none" if x is None else str(x) for x in v)
        else:
            out[key] = v
    return out


def load_expectations() -> dict:
    return json.loads(resources.files("pbfbox").joinpath("data/expectations.json").read_text())


def _expected(section: str, n: int) -> dict:
    return load_expectations()[section].get(str(n), {})


# -- commands ----------------------------------------------------------------

def cmd_space(cfg: RunConfig, args) -> Report:
    spec = cfg.field()
    rep = Report(cfg)
    cs = build_constraints(spec)
    space = pbf_space(cs)
    rank = space.rank_m
    formulas = counting_formulas(spec.n, rank)
    rep.fields.update({
        "L1": int(cs.l1.shape[0]),
        "L2": int(cs.l2.shape[0]),
        "rank": rank,
        "expected_rank": formulas["expected_rank"],
        "rank_match": rank == formulas["expected_rank"],
        "dim_pbf": space.dim,
        "dim_pf": formulas["dim_pf"],
    })
    rep.check("rank", formulas["expected_rank"], rank)
    rep.check("dim_pbf", counting_formulas(spec.n)["dim_pbf"], space.dim)
    if cfg.verify_paper:
        for key, want in _expected("space", spec.n).items():
            rep.check(f"table.{key}", want, rep.fields[key] if key != "rank" else rank)
    if args.basis:
        Path(args.basis).write_text(space.basis.to_text())
    return rep


def cmd_graph(cfg: RunConfig, args) -> Report:
    spec = cfg.field()
    g = build_graph(spec)
    full = graph_stats(g)
    fat = fat_subgraph_stats(g)
    verdict = has_3_regular_subgraph(g)
    full_rank = build_constraints(spec).rank == counting_formulas(spec.n)["expected_rank"]
    rep = Report(cfg)
    rep.fields.update({
        "graph": full.to_json(),
        "fat_subgraph": fat.to_json(),
        "three_regular_subgraph": verdict,
        "full_rank": full_rank,
    })
    rep.rows = [{"graph": name, **{k: v for k, v in s.to_json().items()}}
                for name, s in (("full", full), ("fat", fat))]
    rep.check("three_regular_iff_rank_deficient", not full_rank, verdict)
    if cfg.verify_paper:
        exp = _expected("graph", spec.n)
        if exp:
            rep.check("table.graph", exp["full"], list(full.as_tuple()))
            rep.check("table.fat_subgraph", exp["fat"], list(fat.as_tuple()))
            rep.check("table.three_regular", exp["three_regular"], verdict)
    if args.adjacency:
        Path(args.adjacency).write_text(g.to_text())
    return rep


def cmd_sample(cfg: RunConfig, args) -> Report:
    spec = cfg.field()
    space = pbf_space(build_constraints(spec))
    rows = list(sample_rows(space, cfg.sample_size, cfg.seed, full=True))
    stats = summarise_nl(r.nl for r in rows)
    rep = Report(cfg)
    rep.fields.update({"dim_pbf": space.dim, "nl": stats.to_json()})
    rep.rows = [asdict(r) for r in rows]
    rep.check("delta_le_4", 0, sum(r.delta > 4 for r in rows))
    rep.check("degree_eq_n_minus_1", 0, sum(r.degree != spec.n - 1 for r in rows))
    bound = counting_formulas(spec.n)["nl_lower"]
    rep.check("nl_ge_bound", 0, sum(r.nl < bound for r in rows))
    if cfg.verify_paper:
        exp = _expected("sample", spec.n)
        tol = load_expectations()["tolerance"]["average_nl"]
        if exp and stats.average is not None:
            lo, hi = exp["average"] - tol, exp["average"] + tol
            rep.check(f"table.average_in[{lo:.4f},{hi:.4f}]", True, lo <= stats.average <= hi)
            rep.check("table.max_nl_le_kmnl", True, max(stats.histogram) <= exp["kmnl"])
    return rep


def cmd_nondecomp(cfg: RunConfig, args) -> Report:
    spec = cfg.field()
    g = build_graph(spec)
    ones, twos = type_i_all(spec), type_ii_all(spec)
    iiia = find_type_iiia(g, cfg.max_len)
    iiib = find_type_iiib(g, cfg.max_len)
    p4 = pbf4_space(spec)
    part = t_partition(spec)
    rep = Report(cfg)
    rep.fields.update({
        "counts": {"type-i": len(ones), "type-ii": len(twos),
                   "type-iiia": len(iiia), "type-iiib": len(iiib)},
        "iiia_lengths": sorted({p.t for p in iiia}),
        "dim_pbf4": p4.dim,
        "size_x": p4.size,
    })
    rep.check("type_i_is_half_T1", part.sizes()[0] // 2, len(ones))
    rep.check("rank_x_eq_size", p4.size, p4.rank)
    rep.check("witnesses_are_pbf", True, all(is_pbf_direct(p.f) for p in ones + twos + iiia + iiib))
    if cfg.verify_paper:
        exp = _expected("nondecomp", spec.n)
        if exp:
            rep.check("table.dim_pbf4", exp["dim_pbf4"], p4.dim)
    if args.witnesses:
        with open(args.witnesses, "w", newline="\n") as fh:
            for p in ones + twos + iiia + iiib:
                fh.write(p.to_jsonl() + "\n")
    return rep


def cmd_sbox(cfg: RunConfig, args) -> Report:
    spec = cfg.field()
    rep = Report(cfg)
    if args.pbf:
        text = Path(args.pbf).read_text()
        f = BooleanFunction.from_hex(spec, text)
        source = {"pbf_file": str(args.pbf)}
    else:
        f = sample_pbf(pbf_space(build_constraints(spec)), cfg.seed)
        source = {"seed": cfg.seed}
    if not is_pbf_direct(f):
        cs = build_constraints(spec)
        row = first_violation(f, cs)
        if row == -1:
            where = {"row": -1, "constraint": "f(0) = f(1)"}
        else:
            where = {"row": row, "constraint": cs.row_kind(row),
                     "elements": [spec.hex(e) for e in cs.row_elements(row)]}
        raise InputRejected(f"input is not a PBF; first violated constraint {json.dumps(where)}")
    G = construct_g(f, check=False)
    rep.fields.update({"source": source, "pbf": f.to_hex(), "analysis": analysis_report(G)})
    rep.check("permutation", True, rep.fields["analysis"]["permutation"])
    rep.check("delta_le_4", True, rep.fields["analysis"]["delta"] <= 4)
    Path(args.lut).write_text(G.to_text())
    rep.fields["lut_file"] = str(args.lut)
    return rep


def cmd_formulas(cfg: RunConfig, args) -> Report:
    rep = Report(cfg)
    rep.fields.update(counting_formulas(cfg.n))
    if cfg.verify_paper:
        for key, want in _expected("formulas", cfg.n).items():
            rep.check(f"table.{key}", want, rep.fields[key])
    return rep


COMMANDS = {
    "space": cmd_space,
    "graph": cmd_graph,
    "sample": cmd_sample,
    "nondecomp": cmd_nondecomp,
    "sbox": cmd_sbox,
    "formulas": cmd_formulas,
}


# -- argument handling ---------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=8, help="extension degree (even, default 8)")
    p.add_argument("--poly", default=None, help="irreducible polynomial in hex (default per n)")
    p.add_argument("--seed", type=int, default=1, help="64-bit sampling seed (default 1)")
    p.add_argument("--count", type=int, default=1000, help="sample size (default 1000)")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--verify-paper", action="store_true",
                   help="compare against the built-in table values")
    p.add_argument("--max-len", type=int, default=8,
                   help="cap on half-weight t for type-iii searches (default 8)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="pbfbox", description="Differentially 4-uniform permutations from preferred Boolean functions.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("space", parents=[common], help="rank of M and PBF/PF dimensions") \
        .add_argument("--basis", help="export the PBF basis as a bit-matrix text file")
    sub.add_parser("graph", parents=[common], help="triple-set graph statistics") \
        .add_argument("--adjacency", help="write the adjacency list here")
    sub.add_parser("sample", parents=[common], help="nonlinearity survey of sampled S-boxes")
    sub.add_parser("nondecomp", parents=[common], help="non-decomposable PBFs and PBF_4") \
        .add_argument("--witnesses", help="write witnesses as JSON lines here")
    sb = sub.add_parser("sbox", parents=[common], help="build and analyse one S-box")
    sb.add_argument("--pbf", help="file holding a PBF truth table in hex (else sample by --seed)")
    sb.add_argument("--lut", default="sbox.lut", help="lookup-table output file (default sbox.lut)")
    sub.add_parser("formulas", parents=[common], help="closed-form counts and bounds")
    return parser


def parse_config(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    n_max = 30 if args.command == "formulas" else 20
    n_min = 2 if args.command == "formulas" else 6
    if args.n % 2 or not n_min <= args.n <= n_max:
        parser.error(f"--n must be even with {n_min} <= n <= {n_max}")
    if args.poly is not None:
        try:
            FieldSpec(args.n, int(args.poly, 16))
        except ValueError as e:
            parser.error(f"--poly: {e}")
    if not 0 <= args.seed < 2**64:
        parser.error("--seed must be a 64-bit unsigned integer")
    if args.count < 0 or args.max_len < 1:
        parser.error("--count must be >= 0 and --max-len >= 1")
    poly = args.poly
    if poly is None and args.command != "formulas":
        poly = f"{default_poly(args.n):x}"
    cfg = RunConfig(args.command, args.n, poly, args.seed, args.count, args.format,
                    args.out, args.max_len, args.verify_paper)
    return cfg, args


def main(argv=None) -> int:
    cfg, args = parse_config(argv)
    try:
        rep = COMMANDS[cfg.command](cfg, args)
    except (HexParseError, InputRejected) as e:
        print(f"pbfbox {cfg.command}: {e}", file=sys.stderr)
        return 1
    text = rep.render(cfg.output_format)
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not rep.ok:
        sys.stderr.write(rep.diff())
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
