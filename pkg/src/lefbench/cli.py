"""The ``lefbench`` command line tool.

    lefbench <command> <config> [--out report.txt] [--svg dir] [--resolution N]

Commands: validate, homology, floer-ranks, hw, render, all.  Exit codes:
0 success; 1 unusable input (config errors, validation failures, I/O);
2 undecidable (the oracle facts do not determine an answer); 3 internal
inconsistency (the facts contradict each other or the geometry).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import ScenarioConfig, load_config
from .disc import WrapSpec
from .errors import (ConfigError, ImageTooLarge, IncompleteBasis,
                     Inconsistent, InvalidWitness, LefbenchError,
                     MissingClass, MissingFate, MissingParity, Undecidable,
                     UnknownPair, UnresolvedSign)
from .fibration import Fibration, TotalSpaceFiber, total_space_homology
from .fibration import validate as validate_fibration
from .rank_calculus import ScenarioRanks, UnitFate, analyze
from .report import Report, homology_lines, hw_value, thimble
from .svg import diagram_files, stage_svg
from .tower import build_tower

_UNDECIDED = (Undecidable, UnknownPair, MissingParity, MissingFate,
              MissingClass, UnresolvedSign, IncompleteBasis)
_INCONSISTENT = (Inconsistent, InvalidWitness, ImageTooLarge)

COMMANDS = ("validate", "homology", "floer-ranks", "hw", "render", "all")


def exit_code_for(e: LefbenchError) -> int:
    if isinstance(e, _INCONSISTENT):
        return 3
    if isinstance(e, _UNDECIDED):
        return 2
    return 1


# --------------------------------------------------------------------------
# report sections
# --------------------------------------------------------------------------

def _section_validate(r: Report, cfg: ScenarioConfig) -> bool:
    report = validate_fibration(cfg.fibration)
    r.line("violations", len(report.violations))
    for v in report.violations:
        r.line("violation", v)
    for n in report.notes:
        r.line("note", n)
    r.line("validation", "ok" if report.ok else "FAILED")
    return report.ok


def _section_homology(r: Report, f: Fibration) -> None:
    r.line("fibration", f.name)
    r.line("fiber", f.fiber.name)
    r.line("critical values", len(f.crits))
    for key, value in homology_lines(total_space_homology(f)):
        r.line(key, value)


def _section_floer(r: Report, f: Fibration) -> ScenarioRanks:
    out = analyze(f)
    for fact in f.oracle.fact_lines():
        r.line("fact", fact)
    if isinstance(f.fiber, TotalSpaceFiber):
        inner = f.fiber.fibration
        if inner.oracle is not None:
            for fact in inner.oracle.fact_lines():
                r.line("fiber fact", fact)
    a, b = out.labels
    r.line(f"HF({a},{b})", out.hf_pair)
    r.line("pants image rank", out.pants_image)
    r.line(f"HF({b}, tw_{a} {b})", out.twist)
    r.line(f"Hom_FS({thimble(b)},{thimble(b)})", out.fs.hom_bb)
    r.line(f"Hom_FS({thimble(a)},{thimble(b)})", out.fs.hom_ab)
    r.line(f"Hom_FS(Th_1({b}),{thimble(b)})", out.fs.hom_b1b)
    for w in out.fs.warnings:
        r.line("warning", w)
    return out


def _tower_verdict_args(out: ScenarioRanks, label_x: str, label_y: str):
    if label_x == label_y:
        # each diagonal verdict encodes that thimble's own unit fate
        survives = dict(out.diagonal)[label_x].nonzero
        return {"fate": UnitFate.SURVIVES if survives else UnitFate.DIES}
    return {"verdict": out.off_diagonal}


def _section_hw(r: Report, f: Fibration, cfg: ScenarioConfig) -> ScenarioRanks:
    out = analyze(f)
    if not cfg.towers:
        raise IncompleteBasis(
            "the [run] section requests no towers, so no wrapped verdict"
            " can be assembled")
    r.line("wrap delta", cfg.wrap.delta)
    r.line("wrap levels", " ".join(str(m) for m in cfg.wrap.levels))
    diagonal = dict(out.diagonal)
    for x, y in cfg.towers:
        cx, cy = f.crit_for(x), f.crit_for(y)
        if cx is None or cy is None:
            missing = x if cx is None else y
            raise ConfigError(
                f"tower {x}:{y} names puncture {missing!r}, which has no"
                " critical value")
        lx, ly = cx.cycle_label, cy.cycle_label
        name = f"tower {thimble(lx)}:{thimble(ly)}"
        t = build_tower(f, x, y, cfg.wrap.levels, cfg.wrap.delta,
                        cfg.wrap.bend, **_tower_verdict_args(out, lx, ly))
        for s in t.stages:
            cert = (str(s.rank_certificate.value)
                    if s.rank_certificate is not None else "none")
            r.line(f"{name} stage m={s.m}",
                   f"{s.count} generator(s), u {s.u_count},"
                   f" certificate {cert}")
        for c in t.continuation:
            if t.fate is None:
                note = "exists"
            elif c.unit_image_persists:
                note = "exists; unit image persists"
            else:
                note = "exists; unit image dies"
            r.line(f"{name} continuation {c.m}->{c.n}", note)
        expected = (diagonal[lx].nonzero if lx == ly
                    else out.off_diagonal.nonzero)
        if t.verdict.nonzero != expected:
            raise Inconsistent(
                f"tower {x}:{y} verdict disagrees with the rank calculus")
        r.line(f"HW({thimble(lx)},{thimble(ly)})", hw_value(t.verdict.nonzero))
    r.line("unit fate", out.fate.value)
    r.line("obstruction", out.obstruction.kind)
    return out


def _section_trace(r: Report, out: ScenarioRanks) -> None:
    r.blank()
    r.raw("PROOF TRACE")
    for i, step in enumerate(out.trace, 1):
        r.raw(f"  {i}. [{step.tag}] {step.text}")


def _render_svgs(cfg: ScenarioConfig, outdir: str) -> list[str]:
    d = Path(outdir)
    d.mkdir(parents=True, exist_ok=True)
    files = list(diagram_files(cfg.fibration))
    for x, y in cfg.towers:
        for m in cfg.wrap.levels:
            spec = WrapSpec(m, cfg.wrap.delta, cfg.wrap.bend)
            files.append((f"{cfg.name}-tower-{x}-{y}-m{m}.svg",
                          stage_svg(cfg.fibration, x, y, spec)))
    for name, text in files:
        (d / name).write_text(text, encoding="utf-8")
    return [name for name, _ in files]


# --------------------------------------------------------------------------
# command driver
# --------------------------------------------------------------------------

def run_command(command: str, cfg: ScenarioConfig,
                svg_dir: str | None = None) -> tuple[str, int]:
    """Execute one command; returns (report text, exit code)."""
    r = Report()
    r.line("scenario", cfg.name)
    r.line("command", command)
    code = 0

    if command == "validate":
        if not _section_validate(r, cfg):
            code = 1
    elif command == "homology":
        _section_homology(r, cfg.fibration)
    elif command == "floer-ranks":
        _section_floer(r, cfg.fibration)
    elif command == "hw":
        _section_hw(r, cfg.fibration, cfg)
    elif command == "render":
        if svg_dir is None:
            raise ConfigError("the render command needs --svg DIR")
        for name in _render_svgs(cfg, svg_dir):
            r.line("svg", name)
    elif command == "all":
        if not _section_validate(r, cfg):
            return r.render(), 1
        r.blank()
        _section_homology(r, cfg.fibration)
        r.blank()
        _section_floer(r, cfg.fibration)
        r.blank()
        out = _section_hw(r, cfg.fibration, cfg)
        _section_trace(r, out)
        if svg_dir is not None:
            r.blank()
            for name in _render_svgs(cfg, svg_dir):
                r.line("svg", name)
    else:
        raise ConfigError(f"unknown command {command!r}")
    return r.render(), code


def _with_resolution(f: Fibration, n: int) -> Fibration:
    fiber = f.fiber
    if isinstance(fiber, TotalSpaceFiber):
        fiber = TotalSpaceFiber(_with_resolution(fiber.fibration, n))
    disc = dataclasses.replace(f.disc, boundary_resolution=n)
    return dataclasses.replace(f, disc=disc, fiber=fiber)


class _Parser(argparse.ArgumentParser):
    # usage problems are input problems: exit 1, not argparse's default 2
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def main(argv=None) -> int:
    p = _Parser(prog="lefbench",
                description="Exact-rank workbench for bifibered Lefschetz"
                            " scenarios over the disc.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("config", help="scenario config file")
    p.add_argument("--out", metavar="FILE", help="write the report here")
    p.add_argument("--svg", metavar="DIR", help="write SVG diagrams here")
    p.add_argument("--resolution", type=int, metavar="N",
                   help="override the boundary grid resolution everywhere")
    args = p.parse_args(argv)

    try:
        cfg = load_config(args.config)
        if args.resolution is not None:
            cfg = dataclasses.replace(
                cfg, fibration=_with_resolution(cfg.fibration,
                                                args.resolution))
        text, code = run_command(args.command, cfg, args.svg)
    except LefbenchError as e:
        print(f"error[{type(e).__name__}]: {e}", file=sys.stderr)
        return exit_code_for(e)

    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as e:
            print(f"error[ReportWrite]: {e}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
