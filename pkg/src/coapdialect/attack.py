"""Attacker capabilities and the attack rules."""

from __future__ import annotations

from typing import NamedTuple

from .model import (Attacker, DContent, DMsg, Msg, System, endpoint_view,
                    ms_add, ms_remove, rmap_get, set_tgt_src)
from .model import CODE_METHODS, URI_PATH, opt_value


class Act(NamedTuple):
    tpat: str                 # "" keeps the original target
    spat: str                 # "" keeps the original source
    delay: int


class MC(NamedTuple):
    """Message capability: consume a matching message, emit modified copies.

    An active capability removes the original; a reactive one forwards it.
    """
    tpat: str
    spat: str
    active: bool
    acts: tuple = ()


class MCX(NamedTuple):
    """Copy a GET or PUT to one endpoint holding its resource, late by n.

    The original target is a candidate too, so a late duplicate counts.
    """
    n: int


def _cap_key(cap):
    return (type(cap).__name__, cap)


def caps_ms(caps) -> tuple:
    return tuple(sorted((MC(c.tpat, c.spat, c.active, tuple(sorted(c.acts)))
                         if isinstance(c, MC) else c for c in caps), key=_cap_key))


def mc(tpat: str, spat: str, active: bool, *acts: Act) -> MC:
    return MC(tpat, spat, active, tuple(sorted(acts)))


def act(tpat: str, spat: str, delay: int) -> Act:
    return Act(tpat, spat, delay)


def drop() -> MC:
    return mc("", "", True)


def delay(n: int) -> MC:
    return mc("", "", True, act("", "", n))


def replay(n: int) -> MC:
    return mc("", "", False, act("", "", n))


def redirect(d0: str, d1: str) -> MC:
    return mc(d0, "", True, act(d1, "", 0))


def unredirect(d0: str, d1: str) -> MC:
    return mc("", d1, True, act("", d0, 0))


def divert(d0: str, d1: str, d2: str) -> MC:
    return mc(d0, d2, True, act(d1, "", 0))


def undivert(d0: str, d1: str, d2: str) -> MC:
    return mc(d2, d1, True, act("", d0, 0))


def mk_attacker(eid: str, caps, kb=()) -> Attacker:
    return Attacker(eid, tuple(sorted(kb)), caps_ms(caps))


def pmatch(val: str, pat: str) -> bool:
    return pat == "" or pat == val


def _clear_content(msg: Msg):
    """Plain content of a message; the pruning peeks through dialect seals."""
    p = msg.payload
    return p.bits.content if isinstance(p, DContent) else p


def apply_mc(cap: MC, dmsg: DMsg) -> list:
    copies = [DMsg(set_tgt_src(dmsg.msg, a.tpat, a.spat), dmsg.delay + a.delay, dmsg.anytime)
              for a in cap.acts]
    if not cap.active:
        copies.append(dmsg)
    return copies


def attack_transitions(sys: System):
    """Yield (label, successor) for every attacker, capability and input message."""
    for attacker in sys.agents:
        if not isinstance(attacker, Attacker) or not attacker.caps:
            continue
        caps = list(dict.fromkeys(attacker.caps))
        for dmsg in dict.fromkeys(sys.nin):
            for cap in caps:
                if isinstance(cap, MC):
                    if not (pmatch(dmsg.msg.tgt, cap.tpat) and pmatch(dmsg.msg.src, cap.spat)):
                        continue
                    options = [(f"attack {attacker.eid} {cap} on {dmsg.msg.src}->{dmsg.msg.tgt}",
                                apply_mc(cap, dmsg), ms_remove(attacker.caps, cap))]
                else:
                    options = mcx_options(sys, attacker, cap, dmsg)
                for label, out, new_caps in options:
                    a2 = attacker._replace(kb=ms_add(attacker.kb, dmsg), caps=new_caps)
                    yield label, sys.with_agent(a2)._replace(
                        nin=ms_remove(sys.nin, dmsg), nout=ms_add(sys.nout, *out))


def mcx_options(sys: System, attacker: Attacker, cap: MCX, dmsg: DMsg) -> list:
    """One choice per endpoint holding the requested resource."""
    content = _clear_content(dmsg.msg)
    method = CODE_METHODS.get(content.code)
    if method not in ("GET", "PUT"):
        return []
    path = opt_value(content.opts, URI_PATH)
    src, tgt = dmsg.msg.src, dmsg.msg.tgt
    rest = ms_remove(attacker.caps, cap)
    options = []
    for agent in sys.agents:
        ep = endpoint_view(agent)
        if ep is None or rmap_get(ep.rsrcs, path) is None:
            continue
        copy = DMsg(Msg(ep.eid, src, dmsg.msg.payload), dmsg.delay + cap.n, True)
        new_caps = rest
        if method == "GET":
            new_caps = caps_ms(rest + (mc(src, ep.eid, False, act(src, tgt, 0)),))
        label = f"mcX {attacker.eid} {cap.n} {src}->{tgt} copy to {ep.eid}"
        options.append((label, [dmsg, copy], new_caps))
    return options
