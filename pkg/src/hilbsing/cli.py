"""Command-line front end.

Exit codes: 0 all checks passed, 1 counterexample or internal
disagreement (details in the output), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from . import bounds, enumeration, figures, hom2d, tangent3d
from .cache import TangentCache, default_path
from .lattice import IdealError, NonMinimalWarning, Staircase2, Staircase3, ideal_from_text, parse_ideal

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("hilbsing")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _shard(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        i, n = (int(v) for v in text.split("/"))
    except ValueError:
        raise UsageError(f"--shard expects i/n, got {text!r}")
    if not (n >= 1 and 0 <= i < n):
        raise UsageError(f"--shard {text}: need 0 <= i < n")
    return i, n


def _ideal3(text: str) -> Staircase3:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonMinimalWarning)
        gs = parse_ideal(text, 3)
    for w in caught:
        log.warning("%s", w.message)
    if gs.is_unit:
        raise IdealError("the unit ideal has colength 0")
    return Staircase3.from_generators(gs)


def _ideal2(text: str) -> Staircase2:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonMinimalWarning)
        s = ideal_from_text(text, 2)
    for w in caught:
        log.warning("%s", w.message)
    return s


# ---------------------------------------------------------------------------
# per-ideal work, possibly in worker processes


def _tangent_of(I: Staircase3) -> int:
    return tangent3d.tangent_dimension(I)


def _records(ideals: Iterable[Staircase3], jobs: int, cache: TangentCache, timing: bool) -> Iterator[dict]:
    """Records in input order, whatever the scheduling."""

    def finish(I, T, elapsed):
        rec = bounds.evaluate(I, T).as_dict()
        if timing:
            rec["elapsed_ms"] = round(elapsed * 1000, 3)
        return rec

    if jobs <= 1:
        for I in ideals:
            t0 = time.perf_counter()
            key = I.canonical()
            T = cache.get(key)
            if T is None:
                T = _tangent_of(I)
                cache.put(key, T)
            yield finish(I, T, time.perf_counter() - t0)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        batch: list[Staircase3] = []

        def drain(batch):
            todo = [I for I in batch if cache.values.get(I.canonical()) is None]
            got = dict(zip((I.canonical() for I in todo), pool.map(_tangent_of, todo, chunksize=16)))
            for I in batch:
                t0 = time.perf_counter()
                key = I.canonical()
                T = cache.get(key)
                if T is None:
                    T = got[key]
                    cache.put(key, T)
                yield finish(I, T, time.perf_counter() - t0)

        for I in ideals:
            batch.append(I)
            if len(batch) >= 512:
                yield from drain(batch)
                batch = []
        yield from drain(batch)


RECORD_FIELDS = ["ideal", "l", "m1", "m2", "m3", "T", "psi", "bound_chain"]


class _Emitter:
    def __init__(self, fmt: str, out, timing: bool):
        self.fmt, self.out = fmt, out
        self.fields = RECORD_FIELDS + (["elapsed_ms"] if timing else [])
        self.writer = None

    def record(self, rec: dict) -> None:
        if self.fmt == "records":
            self.out.write(_dump({k: rec[k] for k in self.fields if k in rec}) + "\n")
        elif self.fmt == "csv":
            if self.writer is None:
                self.writer = csv.writer(self.out, lineterminator="\n")
                self.writer.writerow(self.fields)
            self.writer.writerow(
                [" ".join(map(str, rec[k])) if isinstance(rec[k], list) else rec[k] for k in self.fields]
            )
        else:
            chain = " <= ".join(map(str, rec["bound_chain"]))
            self.out.write(f"{rec['ideal']:<48} l={rec['l']:<3} m=({rec['m1']},{rec['m2']},{rec['m3']}) "
                           f"T={rec['T']:<5} psi={rec['psi']:<5} chain: {chain}\n")


def _emit_report(rep: bounds.VerificationReport, args, out) -> int:
    d = rep.to_dict(timing=args.timing)
    if args.report:
        Path(args.report).write_text(json.dumps(d, indent=2) + "\n")
    if args.format == "records":
        out.write(_dump({"report": d}) + "\n")
    elif args.format == "table":
        out.write(f"{'PASS' if rep.ok else 'FAIL'} {rep.statement}"
                  f"{'' if rep.colength is None else f' l={rep.colength}'} scanned={rep.scanned}"
                  f"{'' if rep.max_T is None else f' max_T={rep.max_T}'}\n")
        for s in sorted(rep.maximizers):
            out.write(f"  maximizer: {s}\n")
        for v in rep.violations:
            out.write(f"  violation: {_dump(v)}\n")
    else:
        sys.stderr.write(_dump({"report": d}) + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# subcommands


def _psi_or_none(l: int, m1: int) -> int | None:
    try:
        return bounds.psi(l, m1)
    except ValueError:
        return None  # only non-Borel ideals can have binom(m1+2, 3) > l


def _chain_note(borel: bool, holds: bool) -> str:
    if not borel:
        return "  (not Borel: chain not claimed)"
    return "" if holds else "  (BROKEN)"


def cmd_tangent(args, out) -> int:
    I = _ideal3(args.ideal)
    T = tangent3d.tangent_dimension(I)
    m = I.pure_exponents()
    chain = tangent3d.upper_bound_chain(I, T)
    rec = {
        "ideal": I.canonical(),
        "l": I.colength,
        "m1": m[0], "m2": m[1], "m3": m[2],
        "T": T,
        "psi": _psi_or_none(I.colength, m[0]),
        "bound_chain": chain.as_list(),
        "borel": I.is_borel(),
        "slices": [str(S) for S in I.decompose()],
    }
    if args.format == "records":
        out.write(_dump(rec) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        keys = list(rec)
        w.writerow(keys)
        w.writerow([" ".join(map(str, rec[k])) if isinstance(rec[k], list) else rec[k] for k in keys])
    else:
        out.write(f"ideal     {rec['ideal']}\n")
        out.write(f"colength  {rec['l']}\n")
        out.write(f"pure exp  m1={m[0]} m2={m[1]} m3={m[2]}\n")
        out.write(f"borel     {rec['borel']}\n")
        for i, s in enumerate(rec["slices"]):
            out.write(f"I_{i:<7} ({s})\n")
        out.write(f"T         {T}\n")
        out.write(f"psi(m1)   {'-' if rec['psi'] is None else rec['psi']}\n")
        out.write(f"chain     T={chain.T} <= b1={chain.b1} <= b2={chain.b2} <= b3={chain.b3}"
                  f"{_chain_note(rec['borel'], chain.holds)}\n")
    if args.trace:
        for line in tangent3d.trace_lines(I):
            out.write(line + "\n")
    if rec["borel"] and not chain.holds:
        return EXIT_FAIL
    return EXIT_OK


def cmd_hom2d(args, out) -> int:
    J, Jp = _ideal2(args.J), _ideal2(args.Jprime)
    c = hom2d.hom2_counts(J, Jp)
    by_formula = c.l + c.lp - len(c.ghosts)
    rec = {
        "J": str(J), "Jprime": str(Jp),
        "l": c.l, "lprime": c.lp, "h": Jp.height,
        "hom_components": c.hom, "hom_formula": by_formula,
        "t": hom2d.t_statistic(J, Jp),
        "ghosts": [list(g) for g in c.ghosts],
        "A_p": c.a_p, "A_n": c.a_n, "B_n": c.b_n,
    }
    if args.format == "records":
        out.write(_dump(rec) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(rec))
        w.writerow([" ".join(f"{a},{b}" for a, b in rec["ghosts"]) if k == "ghosts" else v for k, v in rec.items()])
    else:
        out.write(f"J = ({J})  J' = ({Jp})\n")
        out.write(f"l={c.l} l'={c.lp} h={Jp.height}\n")
        out.write(f"hom (components) = {c.hom}\nhom (l+l'-ghosts) = {by_formula}\n")
        out.write(f"t = {rec['t']}\n")
        out.write(f"ghosts ({len(c.ghosts)}): {' '.join(f'({a},{b})' for a, b in c.ghosts) or '-'}\n")
        out.write(f"|A_p|={c.a_p} |A_n|={c.a_n} |B_n|={c.b_n}\n")
    if args.dump:
        for line in hom2d.dump_lines(J, Jp):
            out.write(line + "\n")
    return EXIT_OK if c.hom == by_formula else EXIT_FAIL


def cmd_enumerate(args, out) -> int:
    shard = _shard(args.shard)
    if args.dim == 2:
        if shard is not None:
            raise UsageError("--shard applies to 3-variable enumeration only")
        items = ((str(S), S.colength, list(S.rows)) for S in enumeration.enum_borel2(args.colength))
        for s, l, rows in items:
            if args.format == "records":
                out.write(_dump({"ideal": s, "l": l, "rows": rows}) + "\n")
            else:
                out.write(s + "\n")
        return EXIT_OK
    if args.colength < 1:
        raise UsageError("--colength must be at least 1")
    after = json.loads(args.after) if args.after else None
    w = None
    for I in enumeration.enum_borel3(args.colength, shard=shard, after=after):
        if args.format == "records":
            m = I.pure_exponents()
            out.write(_dump({"ideal": I.canonical(), "l": I.colength, "m1": m[0], "m2": m[1], "m3": m[2],
                             "key": [list(r) for r in enumeration.slice_key(I)]}) + "\n")
        elif args.format == "csv":
            if w is None:
                w = csv.writer(out, lineterminator="\n")
                w.writerow(["ideal", "l", "m1", "m2", "m3"])
            w.writerow([I.canonical(), I.colength, *I.pure_exponents()])
        else:
            out.write(I.canonical() + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.check == "psi":
        return _emit_report(bounds.psi_monotonicity_check(args.k or 60), args, out)
    shard = _shard(args.shard)
    if args.check in ("conjecture", "necessary"):
        if not args.k:
            raise UsageError(f"verify {args.check} needs --k")
        l = comb(args.k + 2, 3)
    else:
        if not args.colength:
            raise UsageError(f"verify {args.check} needs --colength")
        l = args.colength
    if args.check == "lemma-m1":
        return _emit_report(bounds.lemma_m1_check(l, shard=shard), args, out)

    cache = TangentCache(args.cache or default_path())
    emitter = _Emitter(args.format, out, args.timing)
    ideals = enumeration.enum_borel3(l, shard=shard)

    def recs():
        for d in _records(ideals, args.jobs, cache, args.timing):
            if args.per_ideal:
                emitter.record(d)
            yield bounds.IdealRecord(d["ideal"], d["l"], (d["m1"], d["m2"], d["m3"]), d["T"], d["psi"],
                                     tuple(d["bound_chain"]))

    t0 = time.perf_counter()
    try:
        if args.check == "bound":
            rep = bounds.upper_bound_check(l, recs())
        elif args.check == "conjecture":
            rep = bounds.conjecture_check(args.k, recs())
        else:
            rep = bounds.necessary_condition_check(args.k, recs())
        if shard is None:
            bounds.judge_merged(rep)
    finally:
        cache.flush()
    rep.wall_time_s = time.perf_counter() - t0
    if shard is not None:
        rep.details["shard"] = list(shard)
    return _emit_report(rep, args, out)


def cmd_merge(args, out) -> int:
    reports = [bounds.VerificationReport.from_dict(json.loads(Path(p).read_text())) for p in args.reports]
    for r in reports:
        r.details.pop("shard", None)
    rep = bounds.judge_merged(bounds.VerificationReport.merge(reports))
    return _emit_report(rep, args, out)


def cmd_figure(args, out) -> int:
    if args.pair is not None:
        J, Jp = _ideal2(args.ideal), _ideal2(args.pair)
        svg = figures.pair_svg(J, Jp, ghosts=not args.no_ghosts)
    else:
        gs = parse_ideal(args.ideal, 3)
        svg = figures.staircase3_svg(None if gs.is_unit else Staircase3.from_generators(gs),
                                     decomposition=not args.no_slices)
    if args.output == "-":
        out.write(svg)
    else:
        Path(args.output).write_text(svg)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hilbsing", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, default="table"):
        sp.add_argument("--format", choices=("table", "records", "csv"), default=default)

    sp = sub.add_parser("tangent", help="T(I), slices and the bound chain for one ideal")
    sp.add_argument("ideal")
    sp.add_argument("--trace", action="store_true", help="per-shift certificate lines")
    fmt(sp)
    sp.set_defaults(func=cmd_tangent)

    sp = sub.add_parser("hom2d", help="hom(J, S/J'), ghost vectors and t for two ideals in k[y,z]")
    sp.add_argument("J")
    sp.add_argument("Jprime")
    sp.add_argument("--dump", action="store_true", help="one line per (shift, component)")
    fmt(sp)
    sp.set_defaults(func=cmd_hom2d)

    sp = sub.add_parser("enumerate", help="stream Borel-fixed ideals of a colength")
    sp.add_argument("--colength", type=int, required=True)
    sp.add_argument("--dim", type=int, choices=(2, 3), default=3)
    sp.add_argument("--shard", help="i/n: keep top slices with index = i mod n")
    sp.add_argument("--after", help="resume after this slice key (JSON list of row lists)")
    fmt(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="exhaustive checks")
    sp.add_argument("check", choices=("conjecture", "bound", "necessary", "psi", "lemma-m1"))
    sp.add_argument("--k", type=int)
    sp.add_argument("--colength", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--cache", help="T(I) cache file (default: $HILBSING_CACHE)")
    sp.add_argument("--shard", help="i/n partition by top slice")
    sp.add_argument("--per-ideal", action="store_true", help="also emit one record per scanned ideal")
    sp.add_argument("--report", help="write the report JSON to this path")
    sp.add_argument("--timing", action="store_true", help="include elapsed times (output no longer byte-stable)")
    fmt(sp, "records")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("merge", help="merge shard reports and recompute global maxima")
    sp.add_argument("reports", nargs="+")
    sp.add_argument("--report")
    sp.add_argument("--timing", action="store_true")
    fmt(sp, "records")
    sp.set_defaults(func=cmd_merge)

    sp = sub.add_parser("figure", help="SVG of a staircase, or of a 2D pair with ghost vectors")
    sp.add_argument("ideal")
    sp.add_argument("--pair", metavar="JPRIME", help="treat IDEAL as J in k[y,z] and draw against J'")
    sp.add_argument("-o", "--output", default="-")
    sp.add_argument("--no-slices", action="store_true")
    sp.add_argument("--no-ghosts", action="store_true")
    sp.set_defaults(func=cmd_figure)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args, out)
    except (IdealError, UsageError, json.JSONDecodeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
