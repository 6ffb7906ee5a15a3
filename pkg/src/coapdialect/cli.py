"""Command-line front end: list, rewrite, search and suite."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple, Optional

from .dialect import D, UD
from .model import Attacker, endpoint_view
from .props import GoalSyntaxError, parse_goal
from .scenarios import SCENARIOS, SUITES, ScenarioError, experiments, parse_call
from .search import FINAL, PLUS, StateCapExceeded, rewrite, search

EXIT_OK = 0
EXIT_GOAL = 3
EXIT_SCENARIO = 4
EXIT_STATE_CAP = 5


# -- reports ---------------------------------------------------------------------

def describe_state(sys_) -> list:
    """Readable lines for the endpoint resources and the log of a state."""
    lines = []
    for agent in sys_.agents:
        if isinstance(agent, Attacker):
            lines.append(f"  {agent.eid}: caps left {len(agent.caps)}, kb {len(agent.kb)}")
            continue
        ep = endpoint_view(agent)
        rsrcs = " ".join(f"{k}={v}" for k, v in ep.rsrcs) or "-"
        akb = ""
        if ep.aconf is not None and ep.aconf.akb:
            akb = "  akb " + " ".join(f"{k}={v}" for k, v in ep.aconf.akb)
        lines.append(f"  {ep.eid}: {rsrcs}{akb}")
    if sys_.log is not None:
        lines.append("  log: " + " ; ".join(f"rcvP({r.epid},{r.path},{r.val})" for r in sys_.log))
    return lines


def count_phrase(n: int) -> str:
    if n == 0:
        return "no solution"
    return "1 solution" if n == 1 else f"{n} solutions"


def write_traces(path: str, result) -> None:
    with open(path, "w") as fh:
        for k in range(result.count):
            fh.write(f"solution {k + 1}\n")
            for label in result.trace(k):
                fh.write(f"  {label}\n")
            for line in describe_state(result.state(k)):
                fh.write(f"{line}\n")


# -- suite ---------------------------------------------------------------------

class Row(NamedTuple):
    key: str
    group: str
    scenario: str
    goal: str
    mode: str
    dialected: bool
    solutions: Optional[int]
    visited: int
    expected: object           # exact count, or True/False for "some"/"none"
    ref_visited: Optional[int]
    status: str                # "match", "mismatch" or "state-cap"

    def as_record(self) -> dict:
        return self._asdict()


def select(set_name: str) -> list:
    exps = experiments()
    if set_name == "all":
        return exps
    if set_name not in SUITES:
        raise ScenarioError(f"unknown suite {set_name!r}; choose from all, {', '.join(SUITES)}")
    return [e for e in exps if e.group == set_name]


def run_experiment(key: str, max_states: Optional[int] = None,
                   debug_invariants: bool = False) -> Row:
    exp = next(e for e in experiments() if e.key == key)
    cap = max_states if max_states is not None else exp.max_states
    expected = exp.solutions if exp.solutions is not None else exp.at_least_one
    try:
        r = search(exp.build(), exp.goal, exp.mode, exp.bound, exp.caps_exhausted,
                   exp.dialected, cap, debug_invariants)
    except StateCapExceeded as exc:
        return Row(exp.key, exp.group, exp.scenario, exp.goal.text, exp.mode, exp.dialected,
                   None, exc.result.total, expected, exp.visited, "state-cap")
    if exp.solutions is not None:
        ok = r.count == exp.solutions
    elif exp.at_least_one is not None:
        ok = (r.count > 0) == exp.at_least_one
    else:
        ok = True
    return Row(exp.key, exp.group, exp.scenario, exp.goal.text, exp.mode, exp.dialected,
               r.count, r.visited, expected, exp.visited, "match" if ok else "mismatch")


def run_suite(set_name: str, workers: int = 1, max_states: Optional[int] = None,
              debug_invariants: bool = False) -> list:
    keys = [e.key for e in select(set_name)]
    if workers <= 1:
        return [run_experiment(k, max_states, debug_invariants) for k in keys]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_experiment, keys, [max_states] * len(keys),
                             [debug_invariants] * len(keys)))


def format_expected(expected) -> str:
    if expected is True:
        return "some"
    if expected is False:
        return "none"
    return "-" if expected is None else str(expected)


def suite_table(rows: list) -> str:
    head = f"{'experiment':26} {'scenario':34} {'mode':5} {'sol':>5} {'ref':>5} {'visited':>8} {'ref':>7}  status"
    lines = [head]
    for r in rows:
        sol = "-" if r.solutions is None else str(r.solutions)
        pv = "-" if r.ref_visited is None else str(r.ref_visited)
        scen = ("D " if r.dialected else "") + r.scenario
        lines.append(f"{r.key:26} {scen:34} {r.mode:5} {sol:>5} {format_expected(r.expected):>5} "
                     f"{r.visited:>8} {pv:>7}  {r.status}")
    matched = sum(r.status == "match" for r in rows)
    lines.append(f"{matched}/{len(rows)} solution counts as expected")
    return "\n".join(lines)


# -- commands ------------------------------------------------------------------

def cmd_list(args) -> int:
    print("scenarios:")
    for name in SCENARIOS:
        print(f"  {name}")
    print("suites: all " + " ".join(SUITES))
    print("experiments:")
    for e in experiments():
        print(f"  {e.key:28} {e.group:10} {e.scenario}")
    return EXIT_OK


def cmd_rewrite(args) -> int:
    sys_ = parse_call(args.scenario)
    if args.dialected:
        sys_ = D(sys_)
    final = rewrite(sys_, args.steps)
    if args.dialected:
        final = UD(final)
    print(f"rewrite {args.scenario}" + (f" [{args.steps}]" if args.steps is not None else ""))
    print("\n".join(describe_state(final)))
    return EXIT_OK


def cmd_search(args) -> int:
    goal = parse_goal(args.goal)
    sys_ = parse_call(args.scenario)
    arrow = "=>!" if args.mode == FINAL else "=>+"
    result = search(sys_, goal, args.mode, args.bound, args.caps_exhausted, args.dialected,
                    args.max_states, args.debug_invariants)
    if args.format == "records":
        print(json.dumps({"scenario": args.scenario, "dialected": args.dialected,
                          "mode": args.mode, "goal": goal.text, "solutions": result.count,
                          "visited": result.visited, "total": result.total}))
        for k in range(result.count):
            st = result.state(k)
            print(json.dumps({"solution": k + 1, "trace": result.trace(k),
                              "log": [list(r) for r in st.log] if st.log is not None else None}))
    else:
        prefix = "D " if args.dialected else ""
        print(f"search {prefix}{args.scenario} {arrow} {goal.text}")
        print(f"{count_phrase(result.count)}, {result.visited} states visited")
        for k in range(result.count):
            print(f"solution {k + 1}:")
            print("\n".join(describe_state(result.state(k))))
    if args.trace:
        write_traces(args.trace, result)
    return EXIT_OK


def cmd_suite(args) -> int:
    rows = run_suite(args.set, args.workers, args.max_states, args.debug_invariants)
    if args.format == "records":
        for r in rows:
            print(json.dumps(r.as_record()))
    else:
        print(suite_table(rows))
    if args.plot:
        from .report import plot_suite
        plot_suite(rows, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coapdialect",
                                     description="Explore CoAP executions under attack, with and without dialects.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings from the application layer")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list scenarios, suites and experiments")

    rw = sub.add_parser("rewrite", help="follow one deterministic execution")
    rw.add_argument("--scenario", required=True, help="e.g. 'iSys0' or 'raR1(5,0,10,false)'")
    rw.add_argument("--steps", type=int, default=None, help="stop after N steps")
    rw.add_argument("--dialected", action="store_true")

    se = sub.add_parser("search", help="breadth-first search for goal states")
    se.add_argument("--scenario", required=True)
    se.add_argument("--goal", required=True, help="e.g. 'checkRsrc dev1 door lock'")
    se.add_argument("--mode", choices=(FINAL, PLUS), default=FINAL)
    se.add_argument("--bound", type=int, default=None, help="stop after N solutions")
    se.add_argument("--caps-exhausted", action="store_true", help="only states where the attacker used every capability")
    se.add_argument("--dialected", action="store_true", help="wrap endpoints in dialect agents first")
    se.add_argument("--trace", metavar="PATH", help="write witness traces to PATH")
    se.add_argument("--max-states", type=int, default=None)
    se.add_argument("--debug-invariants", action="store_true", help="check the time invariants on every state")
    se.add_argument("--workers", type=int, default=1, help="accepted for symmetry; a single search runs on one core")
    se.add_argument("--format", choices=("text", "records"), default="text")

    su = sub.add_parser("suite", help="run a set of recorded experiments")
    su.add_argument("--set", default="all", help="all, " + ", ".join(SUITES))
    su.add_argument("--workers", type=int, default=1, help="run experiments in N processes")
    su.add_argument("--max-states", type=int, default=None)
    su.add_argument("--debug-invariants", action="store_true")
    su.add_argument("--format", choices=("text", "records"), default="text")
    su.add_argument("--plot", metavar="PNG", help="bar chart of counts against the recorded figures")
    return parser


COMMANDS = {"list": cmd_list, "rewrite": cmd_rewrite, "search": cmd_search, "suite": cmd_suite}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except GoalSyntaxError as exc:
        print(f"goal error: {exc}", file=sys.stderr)
        return EXIT_GOAL
    except ScenarioError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return EXIT_SCENARIO
    except StateCapExceeded as exc:
        r = exc.result
        print(f"state cap exceeded: {r.total} states, {r.count} solutions so far", file=sys.stderr)
        return EXIT_STATE_CAP


if __name__ == "__main__":
    sys.exit(main())
