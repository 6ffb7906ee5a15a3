"""Transition relation, time elapse and breadth-first reachability search."""

from __future__ import annotations

import time
from typing import Callable, NamedTuple, Optional

from . import coap
from .applayer import do_app
from .attack import attack_transitions
from .dialect import (D, decode_dialect, ddevsend_transitions,
                      local_net_transitions, wrapper_mte)
from .model import (INF, Attacker, Endpoint, System, Wrapper, ms,
                    ms_add, ms_remove)


# -- instantaneous rules ---------------------------------------------------

def _receive(ep: Endpoint, msg):
    """Protocol receive followed by the application layer."""
    res = coap.rcv_msg(ep, msg)
    ep2 = res.ep
    if res.fresh or coap.SEM.app_on_dup:
        ep2 = do_app(msg, ep2)
    return ep2, res.out, res.log


def _append_log(sys: System, items: tuple):
    if sys.log is None or not items:
        return sys.log
    return sys.log + items


def rcv_transitions(sys: System):
    for dmsg in dict.fromkeys(sys.nout):
        if dmsg.delay != 0:
            continue
        target = sys.agent(dmsg.msg.tgt)
        if isinstance(target, Endpoint):
            ep, out, items = _receive(target, dmsg.msg)
            yield (f"rcv {target.eid}<-{dmsg.msg.src} {dmsg.msg.payload.code}",
                   sys.with_agent(ep)._replace(nin=ms_add(sys.nin, *out),
                                               nout=ms_remove(sys.nout, dmsg),
                                               log=_append_log(sys, items)))


def ddevrcv_transitions(sys: System):
    for dmsg in dict.fromkeys(sys.nout):
        if dmsg.delay != 0:
            continue
        w = sys.agent(dmsg.msg.tgt)
        if not isinstance(w, Wrapper):
            continue
        nout = ms_remove(sys.nout, dmsg)
        w2, plain = decode_dialect(w, dmsg.msg)
        if plain is None:
            yield f"ddevrcv {w.eid}<-{dmsg.msg.src} drop", sys.with_agent(w2)._replace(nout=nout)
            continue
        inner, out, items = _receive(w2.inner, plain)
        w3 = w2._replace(inner=inner, lin=ms_add(w2.lin, *out))
        yield (f"ddevrcv {w.eid}<-{dmsg.msg.src} ix {dmsg.msg.payload.ix}",
               sys.with_agent(w3)._replace(nout=nout, log=_append_log(sys, items)))


def devsend_transitions(sys: System):
    for a in sys.agents:
        if isinstance(a, Endpoint) and coap.can_send(a):
            ep, out = coap.devsend(a)
            yield f"devsend {a.eid}", sys.with_agent(ep)._replace(nin=ms_add(sys.nin, out))
        elif isinstance(a, Wrapper) and coap.can_send(a.inner):
            ep, out = coap.devsend(a.inner)
            w = a._replace(inner=ep, lin=ms_add(a.lin, out))
            yield f"devsend {a.eid} local", sys.with_agent(w)


def ack_timeout_transitions(sys: System):
    for a in sys.agents:
        if isinstance(a, Endpoint):
            for ep, out in coap.ack_timeouts(a):
                yield f"ackTimeout {a.eid}", sys.with_agent(ep)._replace(nin=ms_add(sys.nin, out))
        elif isinstance(a, Wrapper):
            for ep, out in coap.ack_timeouts(a.inner):
                w = a._replace(inner=ep, lin=ms_add(a.lin, out))
                yield f"ackTimeout {a.eid} local", sys.with_agent(w)


def net_transitions(sys: System):
    for dmsg in dict.fromkeys(sys.nin):
        yield (f"net {dmsg.msg.src}->{dmsg.msg.tgt}",
               sys._replace(nin=ms_remove(sys.nin, dmsg), nout=ms_add(sys.nout, dmsg)))


# -- time ----------------------------------------------------------------

def mte(sys: System):
    """Least time that must pass before some instantaneous rule is enabled."""
    t = INF
    for dmsg in sys.nin:
        t = min(t, dmsg.delay)
    for dmsg in sys.nout:
        t = min(t, coap.dmsg_mte(dmsg))
    for a in sys.agents:
        if isinstance(a, Endpoint):
            t = min(t, coap.endpoint_mte(a))
        elif isinstance(a, Wrapper):
            t = min(t, wrapper_mte(a))
    return t


def pass_time(sys: System, nz: int) -> System:
    agents = []
    for a in sys.agents:
        if isinstance(a, Endpoint):
            a = coap.endpoint_pass_time(a, nz)
        elif isinstance(a, Wrapper):
            a = a._replace(inner=coap.endpoint_pass_time(a.inner, nz))
        agents.append(a)
    return System(tuple(agents), ms(coap.dmsg_pass_time(d, nz) for d in sys.nin),
                  ms(coap.dmsg_pass_time(d, nz) for d in sys.nout), sys.log)


def tick_transitions(sys: System):
    t = mte(sys)
    if 0 < t < INF:
        yield f"tick {t}", pass_time(sys, t)


RULES = (tick_transitions, ddevrcv_transitions, attack_transitions, rcv_transitions,
         devsend_transitions, ack_timeout_transitions, ddevsend_transitions,
         local_net_transitions, net_transitions)


def transitions(sys: System) -> list:
    """All (label, successor) pairs, without duplicate successors."""
    seen = set()
    out = []
    for rule in RULES:
        for label, succ in rule(sys):
            if succ not in seen:
                seen.add(succ)
                out.append((label, succ))
    return out


def check_time_invariants(sys: System, succs: list) -> None:
    """mte is 0, positive or infinite exactly as the enabled rules say.

    Attacks, network moves and deliveries of messages that may arrive at any
    time are optional and never force the clock to stop.
    """
    t = mte(sys)
    instant = [lab for lab, _ in succs if not lab.startswith("tick")]
    if any(d.anytime for d in sys.nout):
        strict = sys._replace(nout=tuple(d for d in sys.nout if not d.anytime))
        labels = [lab for lab, _ in transitions(strict)]
    else:
        labels = instant
    forced = [lab for lab in labels if not lab.startswith(("tick", "attack", "mcX", "net"))]
    if t == 0:
        assert instant, "mte is 0 but no instantaneous rule is enabled"
    elif t == INF:
        assert not forced, f"terminal time but rules enabled: {forced}"
        assert not sys.nin and all(d.anytime for d in sys.nout), "terminal time with messages in flight"
    else:
        assert not forced, f"time may pass while {forced} are enabled"


def rewrite(sys: System, n: Optional[int] = None, max_steps: int = 100_000) -> System:
    """Follow one deterministic path: the first untimed step if any, else tick."""
    steps = 0
    while n is None or steps < n:
        succs = transitions(sys)
        if not succs:
            return sys
        untimed = [s for lab, s in succs if not lab.startswith(("tick", "attack", "mcX"))]
        sys = untimed[0] if untimed else next((s for lab, s in succs if lab.startswith("tick")),
                                              succs[0][1])
        steps += 1
        if steps >= max_steps:
            raise RuntimeError(f"rewrite did not terminate within {max_steps} steps")
    return sys


# -- search ----------------------------------------------------------------

FINAL, PLUS = "final", "plus"


class StateCapExceeded(Exception):
    def __init__(self, result: "SearchResult"):
        super().__init__(f"state cap exceeded after {result.total} states")
        self.result = result


class SearchResult(NamedTuple):
    solutions: tuple          # state indices
    visited: int              # states generated when the last solution was found
    total: int                # states generated by the whole search
    states: list
    parents: list             # (parent index, label) per state
    seconds: float
    complete: bool

    @property
    def count(self) -> int:
        return len(self.solutions)

    def trace(self, k: int) -> list:
        """Labels of the transitions leading to the k-th solution."""
        ix = self.solutions[k]
        labels = []
        while self.parents[ix] is not None:
            ix, label = self.parents[ix]
            labels.append(label)
        return labels[::-1]

    def state(self, k: int) -> System:
        return self.states[self.solutions[k]]


def caps_exhausted(sys: System) -> bool:
    return any(isinstance(a, Attacker) and not a.caps for a in sys.agents)


def search(initial: System, goal: Callable[[System], bool], mode: str = FINAL,
           bound: Optional[int] = None, require_caps_exhausted: bool = False,
           dialected: bool = False, max_states: Optional[int] = None,
           debug_invariants: bool = False) -> SearchResult:
    """Breadth-first search for states satisfying goal.

    In final mode a solution is a state with no successors; in plus mode it is
    any state reached by at least one step.  Goals see wrapped endpoints
    through their inner view.
    """
    if mode not in (FINAL, PLUS):
        raise ValueError(f"unknown mode {mode!r}")
    if dialected:
        initial = D(initial)
    started = time.perf_counter()

    def ok(s: System) -> bool:
        return (not require_caps_exhausted or caps_exhausted(s)) and goal(s)

    index = {initial: 0}
    states = [initial]
    parents: list = [None]
    solutions: list = []
    visited = 0
    head = 0
    complete = True

    def done():
        return bound is not None and len(solutions) >= bound

    def result(complete: bool) -> SearchResult:
        return SearchResult(tuple(solutions), visited if solutions else len(states), len(states),
                            states, parents, time.perf_counter() - started, complete)

    while head < len(states) and not done():
        sys = states[head]
        succs = transitions(sys)
        if debug_invariants:
            check_time_invariants(sys, succs)
        if not succs and mode == FINAL and ok(sys):
            solutions.append(head)
            visited = len(states)
        for label, succ in succs:
            if succ in index:
                continue
            index[succ] = len(states)
            states.append(succ)
            parents.append((head, label))
            if mode == PLUS and ok(succ):
                solutions.append(len(states) - 1)
                visited = len(states)
                if done():
                    break
        if max_states is not None and len(states) > max_states:
            raise StateCapExceeded(result(False))
        head += 1
    return result(complete)
