"""Command-line front end.

Subcommands: simulate (run a scenario, write trace files), randomness
(selection-draw analysis with chi-square summary), opcount (reproduce
the logical-operation tables), vectors (generate or verify golden
vectors). Report paths write delimited data plus matplotlib figures;
pass --no-figures to skip rendering.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import (
    randomness_summary,
    run_iamkeys_selection,
    run_kemesis_selection,
    write_randomness_csv,
)
from .config import PROFILE_NAMES, simulation_config
from .errors import WbanError
from .opcount import operating_scenarios
from .simnet import ScenarioConfig, load_scenario_file, parse_script, run_scenario, write_trace_files
from .vectors import verify_vectors, write_vectors

DEFAULT_OUT = "wban-out"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wbansuite",
        description="WBAN security suite simulator, randomness analysis, "
                    "and operation-count reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one scenario and write trace files")
    sim.add_argument("--frames", type=int, default=None, help="data frames to emit (default 100)")
    sim.add_argument("--loss", type=float, default=None,
                     help="loss probability applied per frame and per ACK (default 0)")
    sim.add_argument("--seed", type=int, default=None, help="simulation RNG seed (default 1)")
    sim.add_argument("--profile", choices=PROFILE_NAMES, default=None,
                     help="protocol profile (default analysis)")
    sim.add_argument("--script", type=Path, default=None,
                     help="adversary script: 'at N: replay I | flip I B | drop data|ack'")
    sim.add_argument("--config", type=Path, default=None,
                     help="scenario file with 'key = value' lines")
    sim.add_argument("--out", type=Path, default=Path(DEFAULT_OUT),
                     help="output directory (default %(default)s)")
    sim.add_argument("--no-figures", action="store_true", help="skip figure rendering")
    sim.set_defaults(func=_cmd_simulate)

    rand = sub.add_parser("randomness",
                          help="per-frame selection draws as CSV plus chi-square summary")
    rand.add_argument("--frames", type=int, default=100,
                      help="frames per scheme (default %(default)s)")
    rand.add_argument("--seed", type=int, default=1, help="selection register seed")
    rand.add_argument("--profile", choices=PROFILE_NAMES, default="analysis")
    rand.add_argument("--out", type=Path, default=Path(DEFAULT_OUT))
    rand.add_argument("--no-figures", action="store_true")
    rand.set_defaults(func=_cmd_randomness)

    opc = sub.add_parser("opcount", help="logical-operation totals per operating scenario")
    opc.add_argument("--csv", action="store_true", help="emit CSV instead of a text table")
    opc.add_argument("--out", type=Path, default=None,
                     help="also write opcount.csv and a figure here")
    opc.set_defaults(func=_cmd_opcount)

    vec = sub.add_parser("vectors", help="generate or verify golden vectors")
    vec.add_argument("mode", choices=("generate", "verify"))
    vec.add_argument("path", type=Path)
    vec.set_defaults(func=_cmd_vectors)
    return parser


def _cmd_simulate(args) -> int:
    if args.config:
        scenario = load_scenario_file(args.config)
    else:
        scenario = ScenarioConfig()
    overrides = {}
    for name in ("frames", "loss", "seed", "profile"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.script is not None:
        overrides["actions"] = parse_script(args.script.read_text())
    if overrides:
        scenario = ScenarioConfig(**{**_scenario_kwargs(scenario), **overrides})

    result = run_scenario(scenario)
    paths = write_trace_files(result, args.out)
    if not args.no_figures:
        from .report import save_event_counts_figure

        save_event_counts_figure(args.out / "events.png", dict(result.counts))
    for line in result.summary_lines():
        print(line)
    print(f"trace: {paths['log']}")
    return 0


def _scenario_kwargs(sc: ScenarioConfig) -> dict:
    return {
        "frames": sc.frames,
        "loss": sc.loss,
        "seed": sc.seed,
        "profile": sc.profile,
        "iamkeys_loss_data": sc.iamkeys_loss_data,
        "iamkeys_loss_ack": sc.iamkeys_loss_ack,
        "kemesis_loss_data": sc.kemesis_loss_data,
        "kemesis_loss_ack": sc.kemesis_loss_ack,
        "refresh_period": sc.refresh_period,
        "sensors": sc.sensors,
        "actions": sc.actions,
    }


def _cmd_randomness(args) -> int:
    config = simulation_config(args.profile)
    iam = run_iamkeys_selection(args.frames, seed=args.seed, config=config)
    kem = run_kemesis_selection(args.frames, seed=args.seed, config=config)
    csv_path = write_randomness_csv(Path(args.out) / "randomness.csv", iam, kem)

    stats = randomness_summary(iam, kem, config)
    lines = [
        f"{s.label}: chi2={s.statistic:.3f} df={s.df} n={s.samples} "
        f"distinct={s.observed_values}"
        for s in stats
    ]
    if not stats:
        lines = ["chi-square omitted: need at least 2 frames"]
    (Path(args.out) / "randomness_summary.txt").write_text("\n".join(lines) + "\n")
    for line in lines:
        print(line)

    if not args.no_figures:
        from .report import save_iamkeys_selection_figure, save_kemesis_selection_figure

        save_iamkeys_selection_figure(Path(args.out) / "iamkeys_selection.png", iam,
                                      config.ref_list_size, config.hashable_count)
        save_kemesis_selection_figure(Path(args.out) / "kemesis_selection.png", kem,
                                      config.kemesis_frames, config.kemesis_fields)
    print(f"csv: {csv_path}")
    return 0


_OPCOUNT_HEADER = "scheme,scenario,alpha,beta,gamma,encryption,decryption"


def _cmd_opcount(args) -> int:
    rows = operating_scenarios()
    if args.csv:
        print(_OPCOUNT_HEADER)
        for r in rows:
            print(f"{r['scheme']},{r['scenario']},{r['alpha']},{r['beta']},"
                  f"{r['gamma']},{r['encryption']},{r['decryption']}")
    else:
        print("Logical operations per frame (one 16-bit block)")
        print(f"{'scheme':<10}{'scenario':<10}{'alpha':>6}{'beta':>6}{'gamma':>6}"
              f"{'encryption':>12}{'decryption':>12}")
        for r in rows:
            print(f"{r['scheme']:<10}{r['scenario']:<10}{str(r['alpha']):>6}"
                  f"{r['beta']:>6}{r['gamma']:>6}"
                  f"{r['encryption']:>12}{r['decryption']:>12}")
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        csv_path = out / "opcount.csv"
        with csv_path.open("w") as fh:
            fh.write(_OPCOUNT_HEADER + "\n")
            for r in rows:
                fh.write(f"{r['scheme']},{r['scenario']},{r['alpha']},{r['beta']},"
                         f"{r['gamma']},{r['encryption']},{r['decryption']}\n")
        from .report import save_opcount_figure

        save_opcount_figure(out / "opcount.png", rows)
        print(f"csv: {csv_path}")
    return 0


def _cmd_vectors(args) -> int:
    if args.mode == "generate":
        path = write_vectors(args.path)
        print(f"wrote {path}")
        return 0
    problems = verify_vectors(args.path)
    if problems:
        for problem in problems:
            print(problem, file=sys.stderr)
        return 1
    print(f"all vectors match: {args.path}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WbanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
