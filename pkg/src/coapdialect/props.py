"""State predicates, log queries and a small textual goal language."""

from __future__ import annotations

import re
from typing import Callable, Optional

from .model import (Attacker, DContent, RcvP, System, endpoint_view,
                    find_endpoint, id_number, rmap_get, tok_matches)


class Prop:
    """A named predicate over systems, composable with & | ~."""

    def __init__(self, fn: Callable[[System], bool], text: str):
        self.fn = fn
        self.text = text

    def __call__(self, sys: System) -> bool:
        return self.fn(sys)

    def __and__(self, other: "Prop") -> "Prop":
        return Prop(lambda s: self.fn(s) and other.fn(s), f"({self.text} and {other.text})")

    def __or__(self, other: "Prop") -> "Prop":
        return Prop(lambda s: self.fn(s) or other.fn(s), f"({self.text} or {other.text})")

    def __invert__(self) -> "Prop":
        return Prop(lambda s: not self.fn(s), f"not {self.text}")

    def __repr__(self) -> str:
        return f"Prop({self.text})"


def all_of(*props: Prop) -> Prop:
    out = props[0]
    for p in props[1:]:
        out = out & p
    return out


TRUE = Prop(lambda s: True, "true")


# -- server state ------------------------------------------------------------

def check_rsrc(sv: str, path: str, val: str) -> Prop:
    def fn(s):
        ep = find_endpoint(s, sv)
        return ep is not None and rmap_get(ep.rsrcs, path) == val
    return Prop(fn, f"checkRsrc {sv} {path} {val}")


has_v = check_rsrc


def _sent(sys: System, sv: str, cl: str, aid: str) -> list:
    ep = find_endpoint(sys, sv)
    if ep is None:
        return []
    return [d.msg for d in ep.rsp_sntd
            if d.msg.tgt == cl and tok_matches(d.msg.payload.tok, aid)]


def has_rsp_t_snt(sv: str, cl: str, aid: str) -> Prop:
    return Prop(lambda s: bool(_sent(s, sv, cl, aid)), f"hasRspTSnt {sv} {cl} {aid}")


def rsp_t_snt_before(sv: str, cl: str, aid0: str, aid1: str) -> Prop:
    """Some response for aid0 was sent before some response for aid1."""
    def fn(s):
        first = [id_number(m.payload.mid) for m in _sent(s, sv, cl, aid0)]
        second = [id_number(m.payload.mid) for m in _sent(s, sv, cl, aid1)]
        return bool(first) and bool(second) and min(first) < max(second)
    return Prop(fn, f"rspTSntBefore {sv} {cl} {aid0} {aid1}")


# -- client state ------------------------------------------------------------

def _received(sys: System, cl: str, sv: str, aid: str) -> list:
    ep = find_endpoint(sys, cl)
    if ep is None:
        return []
    return [m for m in ep.rsp_rcd if m.src == sv and tok_matches(m.payload.tok, aid)]


def has_rsp_t_rcd(cl: str, sv: str, aid: str) -> Prop:
    return Prop(lambda s: bool(_received(s, cl, sv, aid)), f"hasRspTRcd {cl} {sv} {aid}")


def has_get_rsp(cl: str, sv: str, aid: str, val: str) -> Prop:
    def fn(s):
        return any(m.payload.code in ("2.05", "4.04") and (val == "" or m.payload.body == val)
                   for m in _received(s, cl, sv, aid))
    return Prop(fn, f"hasGetRsp {cl} {sv} {aid} {val}")


def _pending(sys: System, cl: str, sv: str, aid: str) -> bool:
    ep = find_endpoint(sys, cl)
    if ep is None:
        return False
    return (any(d.msg.tgt == sv and tok_matches(d.msg.payload.tok, aid) for d in ep.w4ack)
            or any(m.tgt == sv and tok_matches(m.payload.tok, aid) for m in ep.w4rsp))


def rsp_pend(cl: str, sv: str, aid: str) -> Prop:
    return Prop(lambda s: _pending(s, cl, sv, aid), f"rspPend {cl} {sv} {aid}")


# -- log -------------------------------------------------------------------

def _li_match(item: RcvP, pat: RcvP) -> bool:
    return all(p == "" or p == v for v, p in zip(item, pat))


def find_rcv_li(log: tuple, start: int, pat: RcvP) -> Optional[int]:
    for ix in range(start, len(log)):
        if _li_match(log[ix], pat):
            return ix
    return None


def sub_lil_match(log: tuple, pats) -> bool:
    ix = 0
    for pat in pats:
        hit = find_rcv_li(log, ix, pat)
        if hit is None:
            return False
        ix = hit + 1
    return True


def sub_lil(*pats: RcvP) -> Prop:
    text = " ; ".join(f"rcvP {p.epid} {p.path} {p.val or '_'}" for p in pats)
    return Prop(lambda s: sub_lil_match(s.log or (), pats), f"subLIL [{text}]")


def rcvp(epid: str, path: str, val: str = "") -> RcvP:
    return RcvP(epid, path, val)


# -- application state ---------------------------------------------------------

def has_av(epid: str, name: str, val: str) -> Prop:
    def fn(s):
        ep = find_endpoint(s, epid)
        return ep is not None and ep.aconf is not None and rmap_get(ep.aconf.akb, name) == val
    return Prop(fn, f"hasAV {epid} {name} {val}")


def is_v(ctl: str, epid: str, aid: str, path: str, val: str) -> Prop:
    return Prop(lambda s: check_rsrc(epid, path, val)(s) and not _pending(s, ctl, epid, aid),
                f"isV {ctl} {epid} {aid} {path} {val}")


def become_v(ctl: str, epid: str, aid: str, path: str, val: str) -> Prop:
    return Prop(lambda s: check_rsrc(epid, path, val)(s) and _pending(s, ctl, epid, aid),
                f"becomeV {ctl} {epid} {aid} {path} {val}")


def akb_not_tok(eve: str, aid: str) -> Prop:
    def fn(s):
        a = s.agent(eve)
        if not isinstance(a, Attacker):
            return True
        for d in a.kb:
            p = d.msg.payload
            c = p.bits.content if isinstance(p, DContent) else p
            if tok_matches(c.tok, aid):
                return False
        return True
    return Prop(fn, f"aKbNotTok {eve} {aid}")


def epswrb_count(sys: System, path: str, val: str) -> int:
    return sum(1 for a in sys.agents
               if (ep := endpoint_view(a)) is not None and rmap_get(ep.rsrcs, path) == val)


def epswrb_gt(path: str, val: str, k: int) -> Prop:
    return Prop(lambda s: epswrb_count(s, path, val) > k, f"epswrbGT {path} {val} {k}")


def caps_empty() -> Prop:
    return Prop(lambda s: any(isinstance(a, Attacker) and not a.caps for a in s.agents),
                "capsEmpty")


# -- bridge invariant negations -------------------------------------------------

def bcl_idle_inv(bcid="bctl", brid="br", gid="ga") -> Prop:
    p = has_av(bcid, "status", "idle") & (
        ~is_v(bcid, brid, "BridgeCl", "bridge", "close") | ~is_v(bcid, gid, "GateOp", "gate", "open"))
    return Prop(p.fn, f"bclIdleInv {bcid} {brid} {gid}")


def gate_ncl_inv(bcid="bctl", brid="br", gid="ga") -> Prop:
    p = ~is_v(bcid, gid, "GateCL", "gate", "close") & ~is_v(bcid, brid, "BridgeCl", "bridge", "close")
    return Prop(p.fn, f"gateNClInv {bcid} {brid} {gid}")


def br_ncl_inv(bcid="bctl", brid="br", gid="ga") -> Prop:
    p = ~is_v(bcid, brid, "BridgeCl", "bridge", "close") & ~is_v(bcid, gid, "GateCL", "gate", "close")
    return Prop(p.fn, f"brNClInv {bcid} {brid} {gid}")


def boat_pass_inv(bcid="bctl", bsid="bs", brid="br", gid="ga") -> Prop:
    p = become_v(bcid, bsid, "BSPass", "boat", "pass") & (
        ~is_v(bcid, brid, "BridgeOp", "bridge", "open") | ~is_v(bcid, gid, "GateCL", "gate", "close"))
    return Prop(p.fn, f"boatPassInv {bcid} {bsid} {brid} {gid}")


# -- pick-n-place invariant negations --------------------------------------------

def pnp_idle_inv(pid="pctl", gid="gr", aid="arm", go_i="goL") -> Prop:
    p = has_av(pid, "status", "idle") & (
        ~is_v(pid, aid, "ArmGoI", "arm", go_i) | ~is_v(pid, gid, "GripOp", "grip", "open"))
    return Prop(p.fn, f"pnpIdleInv {pid} {gid} {aid} {go_i}")


def arm_going_i_inv(pid="pctl", gid="gr", aid="arm", go_i="goL") -> Prop:
    p = become_v(pid, aid, "ArmGoI", "arm", go_i) & ~is_v(pid, gid, "GripCl", "grip", "close")
    return Prop(p.fn, f"armGoingIInv {pid} {gid} {aid} {go_i}")


def arm_going_ni_inv(pid="pctl", gid="gr", aid="arm", go_ni="goR") -> Prop:
    p = become_v(pid, aid, "ArmGoNI", "arm", go_ni) & ~is_v(pid, gid, "GripOp", "grip", "open")
    return Prop(p.fn, f"armGoingNIInv {pid} {gid} {aid} {go_ni}")


def grip_closing_inv(pid="pctl", gid="gr", aid="arm", go_ni="goR") -> Prop:
    p = become_v(pid, gid, "GripCl", "grip", "close") & ~is_v(pid, aid, "ArmGoNI", "arm", go_ni)
    return Prop(p.fn, f"gripClosingInv {pid} {gid} {aid} {go_ni}")


def grip_opening_inv(pid="pctl", gid="gr", aid="arm", go_i="goL") -> Prop:
    p = become_v(pid, gid, "GripOp", "grip", "open") & ~is_v(pid, aid, "ArmGoI", "arm", go_i)
    return Prop(p.fn, f"gripOpeningInv {pid} {gid} {aid} {go_i}")


# -- textual goals --------------------------------------------------------------

class GoalSyntaxError(ValueError):
    pass


ATOMS = {
    "checkRsrc": (3, check_rsrc), "hasV": (3, has_v),
    "hasRspTSnt": (3, has_rsp_t_snt), "rspTSntBefore": (4, rsp_t_snt_before),
    "hasRspTRcd": (3, has_rsp_t_rcd), "hasGetRsp": (4, has_get_rsp),
    "rspPend": (3, rsp_pend), "hasAV": (3, has_av), "isV": (5, is_v),
    "becomeV": (5, become_v), "aKbNotTok": (2, akb_not_tok),
    "epswrbGT": (3, lambda p, v, k: epswrb_gt(p, v, int(k))),
    "capsEmpty": (0, caps_empty),
    "bclIdleInv": (3, bcl_idle_inv), "gateNClInv": (3, gate_ncl_inv),
    "brNClInv": (3, br_ncl_inv), "boatPassInv": (4, boat_pass_inv),
    "pnpIdleInv": (4, pnp_idle_inv), "armGoingIInv": (4, arm_going_i_inv),
    "armGoingNIInv": (4, arm_going_ni_inv), "gripClosingInv": (4, grip_closing_inv),
    "gripOpeningInv": (4, grip_opening_inv),
}

_TOKEN = re.compile(r'"[^"]*"|[()\[\];]|[^\s()\[\];]+')


def _tokens(text: str) -> list:
    return _TOKEN.findall(text)


def _arg(tok: str) -> str:
    if tok.startswith('"'):
        return tok[1:-1]
    return "" if tok == "_" else tok


def parse_goal(text: str) -> Prop:
    """Parse a goal such as 'checkRsrc dev1 door lock and not rspPend dev0 dev1 putN'.

    Atoms take a fixed number of string arguments; "_" or "" is the empty
    string.  subLIL takes a bracketed list of 'rcvP epid path val' items
    separated by ';'.  'and' binds tighter than 'or'; 'not' tighter still.
    """
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise GoalSyntaxError(f"unexpected end of goal {text!r}")
        tok = toks[pos]
        if expected is not None and tok != expected:
            raise GoalSyntaxError(f"expected {expected!r}, found {tok!r}")
        pos += 1
        return tok

    def disj():
        p = conj()
        while peek() == "or":
            take()
            p = p | conj()
        return p

    def conj():
        p = unary()
        while peek() == "and":
            take()
            p = p & unary()
        return p

    def unary():
        tok = peek()
        if tok == "not":
            take()
            return ~unary()
        if tok == "(":
            take()
            p = disj()
            take(")")
            return p
        return atom()

    def atom():
        name = take()
        if name == "subLIL":
            take("[")
            pats = []
            while peek() != "]":
                take("rcvP")
                pats.append(RcvP(_arg(take()), _arg(take()), _arg(take())))
                if peek() == ";":
                    take()
            take("]")
            return sub_lil(*pats)
        if name not in ATOMS:
            raise GoalSyntaxError(f"unknown atom {name!r}")
        arity, ctor = ATOMS[name]
        args = [_arg(take()) for _ in range(arity)]
        return ctor(*args)

    if not toks:
        raise GoalSyntaxError("empty goal")
    p = disj()
    if pos != len(toks):
        raise GoalSyntaxError(f"trailing input at {toks[pos]!r}")
    return Prop(p.fn, text)
