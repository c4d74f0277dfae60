"""Command-line front end: ``swapengine steady|sweep|fuzz|mc|ultrahot``.

Configs are INI files::

    [cold]
    energies = 0, 1
    temperature = 1        ; or beta = 1
    [hot]
    energies = 0, 2
    temperature = 2
    [params]
    x = 1
    r = 1

plus an optional [sweep], [mc] or [ultrahot] section for the matching
subcommand. Exit codes: 0 ok, 1 invariant violation, 2 config error,
3 domain error.
"""
import argparse
import configparser
import io
import json
import math
import re
import sys
from enum import Enum

import numpy as np

from . import bounds as bd
from .campaign import SWEEP_COLUMNS, SWEEP_PARAMETERS, SweepSpec, run_fuzz, run_sweep
from .errors import ConfigError, SwapEngineError
from .montecarlo import SimConfig, simulate
from .regimes import ultra_hot_optimize
from .statekit import BathSpec, CycleParams, gibbs_population
from .thermo import Mode, clausius_number, cycle_observables, purity_change, purity_change_lower_bound

EXIT_OK, EXIT_INVARIANT, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3

# -- formatting -------------------------------------------------------------


def fmt_float(v) -> str:
    return format(float(v), ".17g")


def to_json(obj) -> str:
    """JSON with every float at 17 significant digits; nan/inf become null.

    Keys keep insertion order, which the builders below fix.
    """
    out = io.StringIO()
    _emit(obj, out, 0)
    out.write("\n")
    return out.getvalue()


def _emit(obj, out, depth):
    pad = "  " * (depth + 1)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        out.write("null" if obj is None else ("true" if obj else "false"))
    elif isinstance(obj, Enum):
        out.write(json.dumps(obj.value))
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(fmt_float(obj) if math.isfinite(obj) else "null")
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.write(f"{pad}{json.dumps(str(k))}: ")
            _emit(v, out, depth + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write("  " * depth + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.write("[]")
        elif all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in items):
            out.write("[")
            for i, v in enumerate(items):
                _emit(v, out, depth)
                if i < len(items) - 1:
                    out.write(", ")
            out.write("]")
        else:
            out.write("[\n")
            for i, v in enumerate(items):
                out.write(pad)
                _emit(v, out, depth + 1)
                out.write(",\n" if i < len(items) - 1 else "\n")
            out.write("  " * depth + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_csv(rows, columns) -> str:
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for c in columns:
            v = row[c]
            if v is None:
                cells.append("")
            elif isinstance(v, (float, np.floating)):
                cells.append(fmt_float(v) if math.isfinite(v) else "")
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# -- config -----------------------------------------------------------------

_SECTION = re.compile(r"^\s*\[([^\]]+)\]")
_KEY = re.compile(r"^\s*([^=:;#\s][^=:]*?)\s*[=:]")


class Config:
    """Parsed INI text that remembers where each key was written."""

    def __init__(self, text: str):
        self.parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        try:
            self.parser.read_string(text)
        except configparser.MissingSectionHeaderError as e:
            raise ConfigError("expected a [section] header before any key", e.lineno) from None
        except configparser.ParsingError as e:
            line, raw = e.errors[0]
            raise ConfigError(f"cannot parse {raw.strip()!r}", line) from None
        except configparser.DuplicateSectionError as e:
            raise ConfigError(f"duplicate section [{e.section}]", e.lineno) from None
        except configparser.DuplicateOptionError as e:
            raise ConfigError(f"duplicate key {e.option!r} in [{e.section}]", e.lineno) from None
        self.lines = {}
        section = None
        for n, raw in enumerate(text.splitlines(), start=1):
            m = _SECTION.match(raw)
            if m:
                section = m.group(1).strip()
                self.lines[(section, None)] = n
                continue
            m = _KEY.match(raw)
            if m and section is not None:
                self.lines[(section, m.group(1).strip().lower())] = n

    @classmethod
    def from_path(cls, path):
        try:
            with open(path, encoding="utf-8") as fh:
                return cls(fh.read())
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e.strerror}") from None

    def line(self, section, key=None):
        return self.lines.get((section, key), self.lines.get((section, None)))

    def has(self, section, key=None):
        if key is None:
            return self.parser.has_section(section)
        return self.parser.has_option(section, key)

    def require_section(self, section):
        if not self.parser.has_section(section):
            raise ConfigError(f"missing section [{section}]")

    def raw(self, section, key):
        self.require_section(section)
        if not self.parser.has_option(section, key):
            raise ConfigError(f"missing key {key!r} in [{section}]", self.line(section))
        text = self.parser.get(section, key)
        if "\n" in text:
            line = self.line(section, key)
            raise ConfigError("indented continuation lines are not allowed", None if line is None else line + 1)
        return text

    def _convert(self, section, key, fn, what, default):
        if default is not _REQUIRED and not self.has(section, key):
            return default
        text = self.raw(section, key)
        try:
            return fn(text)
        except ValueError:
            raise ConfigError(f"{section}.{key} must be {what}, got {text!r}", self.line(section, key)) from None

    def float(self, section, key, default=None):
        return self._convert(section, key, _finite_float, "a finite number", default)

    def int(self, section, key, default=None):
        return self._convert(section, key, int, "an integer", default)

    def floats(self, section, key):
        return self._convert(
            section, key, lambda s: [_finite_float(t) for t in s.split(",")], "a comma-separated list of numbers", _REQUIRED
        )

    def choice(self, section, key, options, default=None):
        if default is not _REQUIRED and not self.has(section, key):
            return default
        text = self.raw(section, key).strip()
        if text not in options:
            raise ConfigError(f"{section}.{key} must be one of {', '.join(options)}, got {text!r}", self.line(section, key))
        return text


_REQUIRED = object()


def _finite_float(s):
    v = float(s)
    if not math.isfinite(v):
        raise ValueError(s)
    return v


def read_bath(cfg: Config, section: str) -> BathSpec:
    energies = cfg.floats(section, "energies")
    has_b, has_t = cfg.has(section, "beta"), cfg.has(section, "temperature")
    if has_b == has_t:
        raise ConfigError(f"[{section}] needs exactly one of beta or temperature", cfg.line(section))
    key = "beta" if has_b else "temperature"
    value = cfg.float(section, key, _REQUIRED)
    try:
        if has_b:
            return BathSpec(energies, value, section)
        return BathSpec.from_temperature(energies, value, section)
    except SwapEngineError as e:
        # still a domain error (exit 3), but say where it came from
        raise type(e)(f"line {cfg.line(section, key)}: [{section}] {e}") from None


def read_params(cfg: Config) -> CycleParams:
    if not cfg.has("params"):
        return CycleParams(1.0, 1.0)
    return CycleParams(cfg.float("params", "x", 1.0), cfg.float("params", "r", 1.0))


def read_instance(cfg: Config):
    return read_bath(cfg, "cold"), read_bath(cfg, "hot"), read_params(cfg)


def read_sweep(cfg: Config) -> SweepSpec:
    cold, hot, params = read_instance(cfg)
    parameter = cfg.choice("sweep", "parameter", SWEEP_PARAMETERS, _REQUIRED)
    lo, hi = cfg.float("sweep", "lo", _REQUIRED), cfg.float("sweep", "hi", _REQUIRED)
    steps = cfg.int("sweep", "steps", _REQUIRED)
    if not lo < hi:
        raise ConfigError("sweep needs lo < hi", cfg.line("sweep", "hi"))
    if steps < 2:
        raise ConfigError("sweep needs steps >= 2", cfg.line("sweep", "steps"))
    return SweepSpec(parameter, lo, hi, steps, cold, hot, params)


# -- reports ----------------------------------------------------------------


def _bath_json(b: BathSpec):
    return {"energies": b.energies, "beta": b.beta, "population": gibbs_population(b)}


def _bound_json(b: bd.BoundReport):
    d = {"name": b.name, "sense": b.sense, "locality": b.locality, "value": b.value, "actual": b.actual, "satisfied": b.satisfied}
    if b.skipped is not None:
        d["skipped"] = b.skipped
    return d


def steady_report(cold, hot, params) -> dict:
    rep = cycle_observables(cold, hot, params)
    out = {
        "cold": _bath_json(cold),
        "hot": _bath_json(hot),
        "params": {"x": params.x, "r": params.r, "x_tilde": params.x_tilde},
        "mode": rep.mode,
        "work": rep.work,
        "q_hot": rep.q_hot,
        "q_cold": rep.q_cold,
    }
    if rep.mode is Mode.ENGINE:
        out["efficiency"] = rep.efficiency
    out["steady"] = {"p_A": rep.steady.p_A, "p_C": rep.steady.p_C, "dp": rep.steady.dp}
    pur = purity_change(cold, hot, params)
    pur["lower_bound"] = purity_change_lower_bound(cold, hot, params)
    out["purity"] = pur
    if rep.ultra_hot:
        out["clausius"] = None
        out["entropy_production"] = None
        out["necessary_conditions"] = None
        out["work_bounds"] = None
        return out
    out["clausius"] = {f"R_{2 * m - 1}": clausius_number(cold, hot, params, m) for m in (1, 2, 3)}
    out["entropy_production"] = -hot.beta * rep.q_hot - cold.beta * rep.q_cold
    out["necessary_conditions"] = [
        _bound_json(bd.engine_necessary_condition(cold, hot)),
        _bound_json(bd.refrigerator_necessary_condition(cold, hot)),
    ]
    out["work_bounds"] = [_bound_json(b) for b in bd.work_bounds(cold, hot, params)]
    if rep.mode is Mode.ENGINE and rep.q_hot > 0:
        out["efficiency_bounds"] = [_bound_json(b) for b in bd.efficiency_bounds(cold, hot, params)]
    return out


def mc_report(cfg: Config, seed=None) -> dict:
    cold, hot, params = read_instance(cfg)
    cfg.require_section("mc")
    sim = SimConfig(
        cold,
        hot,
        params,
        n_cycles=cfg.int("mc", "n_cycles", _REQUIRED),
        burn_in=cfg.int("mc", "burn_in", None),
        seed=seed if seed is not None else cfg.int("mc", "seed", 0),
        collisions_per_stroke=cfg.int("mc", "collisions_per_stroke", 1),
        n_batches=cfg.int("mc", "n_batches", 50),
    )
    tr = simulate(sim)
    exact = cycle_observables(cold, hot, params)
    return {
        "seed": tr.seed,
        "rng_algorithm": tr.rng_algorithm,
        "burn_in": tr.burn_in,
        "n_measured": tr.n_measured,
        "mean_p_A": tr.mean_p_A,
        "mean_p_C": tr.mean_p_C,
        "stderr_p_A": tr.stderr_p_A,
        "mean_work": tr.mean_work,
        "stderr_work": tr.stderr_work,
        "mean_q_hot": tr.mean_q_hot,
        "mean_q_cold": tr.mean_q_cold,
        "mean_energy_change": tr.mean_energy_change,
        "closed_form": {"p_A": exact.steady.p_A, "p_C": exact.steady.p_C, "work": exact.work},
    }


def ultrahot_report(cfg: Config, seed=None) -> dict:
    hot = read_bath(cfg, "hot")
    params = read_params(cfg)
    cfg.require_section("ultrahot")
    t_c = cfg.float("ultrahot", "t_c", _REQUIRED)
    constraint = cfg.choice("ultrahot", "constraint", ("fix_hot_norm", "fix_cold_norm"), "fix_hot_norm")
    seed = seed if seed is not None else cfg.int("ultrahot", "seed", 0)
    rep = ultra_hot_optimize(hot, t_c, constraint, params, seed=seed, n_perturb=cfg.int("ultrahot", "n_perturb", 200))
    return {
        "constraint": constraint,
        "t_c": t_c,
        "t_h": hot.temperature,
        "compression_ratio": rep.compression_ratio,
        "compression_ratio_numeric": rep.compression_ratio_numeric,
        "eta": rep.eta,
        "eta_numeric": rep.eta_numeric,
        "w_max": rep.w_max,
        "engine_condition": rep.engine_condition,
        "parallel_optimal": rep.parallel_optimal,
    }


# -- commands ---------------------------------------------------------------


def _need_config(args):
    if args.config is None:
        raise ConfigError(f"{args.command} needs --config PATH")
    return Config.from_path(args.config)


def cmd_steady(args):
    return to_json(steady_report(*read_instance(_need_config(args)))), EXIT_OK


def cmd_sweep(args):
    return to_csv(run_sweep(read_sweep(_need_config(args))), SWEEP_COLUMNS), EXIT_OK


def cmd_fuzz(args):
    if args.n < 1:
        raise ConfigError("--n must be >= 1")
    if args.max_levels < 2:
        raise ConfigError("--max-levels must be >= 2")
    summary = run_fuzz(args.n, seed=args.seed if args.seed is not None else 0, max_levels=args.max_levels)
    return to_json(summary), EXIT_INVARIANT if summary["failures"] else EXIT_OK


def cmd_mc(args):
    return to_json(mc_report(_need_config(args), args.seed)), EXIT_OK


def cmd_ultrahot(args):
    return to_json(ultrahot_report(_need_config(args), args.seed)), EXIT_OK


COMMANDS = {"steady": cmd_steady, "sweep": cmd_sweep, "fuzz": cmd_fuzz, "mc": cmd_mc, "ultrahot": cmd_ultrahot}


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="swapengine", description="Partial-swap heat engine calculator.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", metavar="PATH", help="INI file with [cold], [hot], [params] and command sections")
    p.add_argument("--seed", type=_u64, default=None, help="RNG seed (fuzz, mc, ultrahot)")
    p.add_argument("--n", type=int, default=10_000, help="fuzz: number of random instances")
    p.add_argument("--max-levels", type=int, default=6, help="fuzz: largest number of levels")
    p.add_argument("--out", metavar="PATH", default=None, help="write output here instead of stdout")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = COMMANDS[args.command](args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (SwapEngineError, ValueError) as e:
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
