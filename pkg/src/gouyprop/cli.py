"""Command-line front end: ``gouyprop {classical,quantum,verify}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .classical import diagnostics, solve_fundamental
from .config import load_config, parse_config, reference_config_dict
from .errors import ConfigError, DomainError, IntegrationError
from .output import write_bundle, write_classical, write_manifest
from .scenarios import run_experiment
from .verify import format_table, run_checks

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_INTEGRATION = 3


def _out_dir(cfg, override):
    out = Path(override if override else cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _tolerances(cfg):
    return {"rel_tol": cfg.rel_tol, "abs_tol": min(1e-12, cfg.rel_tol * 1e-2)}


def _diag(sol):
    wr, pin, tc = diagnostics(sol)
    return {"wronskian_residual": wr, "pinney_residual": pin, "theta_consistency": tc}


def cmd_classical(config_path, out=None):
    cfg = load_config(config_path)
    exp = cfg.experiment
    sol = solve_fundamental(exp.medium, exp.rel_tol, exp.z_samples)
    out_dir = _out_dir(cfg, out)
    files = [write_classical(sol, out_dir)]
    write_manifest(out_dir, "classical", cfg.resolved, files, _diag(sol), _tolerances(cfg))
    print(f"wrote {len(files)} file(s) and manifest.json to {out_dir}")
    return EXIT_OK


def cmd_quantum(config_path, out=None):
    cfg = load_config(config_path)
    result = run_experiment(cfg.experiment)
    out_dir = _out_dir(cfg, out)
    files = write_bundle(result, out_dir)
    write_manifest(out_dir, "quantum", cfg.resolved, files, result.diagnostics, _tolerances(cfg))
    print(f"wrote {len(files)} file(s) and manifest.json to {out_dir}")
    return EXIT_OK


def cmd_verify(config_path=None, level="fast"):
    if config_path is None:
        cfg = parse_config(reference_config_dict(), strict_tolerance=False)
    else:
        cfg = load_config(config_path, strict_tolerance=False)
    checks = run_checks(cfg, level)
    print(format_table(checks))
    failed = [c for c in checks if not c.passed]
    if failed:
        for c in failed:
            print(f"FAILED: {c.name}: measured {c.measured:.3e} >= {c.threshold:.3e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gouyprop",
        description="Classical and quantum light propagation in longitudinally inhomogeneous waveguides.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classical", help="integrate u, v, rho, theta, s and write classical.csv")
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--out", metavar="DIR", help="output directory (overrides run.output_dir)")

    p = sub.add_parser("quantum", help="evolve the configured states and write noise/Gouy CSVs")
    p.add_argument("--config", required=True, metavar="PATH")
    p.add_argument("--out", metavar="DIR", help="output directory (overrides run.output_dir)")

    p = sub.add_parser("verify", help="run invariant and oracle checks")
    p.add_argument("--config", metavar="PATH", help="defaults to the reference cosine medium")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classical":
            return cmd_classical(args.config, args.out)
        if args.command == "quantum":
            return cmd_quantum(args.config, args.out)
        return cmd_verify(args.config, args.level)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"integration failed: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION


if __name__ == "__main__":
    sys.exit(main())
