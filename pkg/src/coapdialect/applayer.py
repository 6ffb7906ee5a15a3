"""Application layer: message patterns, conditional actions and the builtin rule sets."""

from __future__ import annotations

import logging
from typing import NamedTuple, Optional, Union

from .model import (AConf, AMsg, Endpoint, Msg, classify, get_body, get_path,
                    get_src, get_tok, rmap_get, rmap_set, tok_matches)

log = logging.getLogger(__name__)


class V(NamedTuple):
    """A variable in a pattern, condition or action."""
    name: str


Term = Union[V, str]


class Req(NamedTuple):
    src: Term
    meth: Term
    path: Term
    val: Term


class Rsp(NamedTuple):
    src: Term
    amid: Term
    success: bool
    val: Term


class Eq(NamedTuple):
    a: Term
    b: Term


class Neq(NamedTuple):
    a: Term
    b: Term


class Conj(NamedTuple):
    conds: tuple = ()


class Disj(NamedTuple):
    conds: tuple = ()


TRUE = Conj()


class Send(NamedTuple):
    amid: Term
    tgt: Term
    mtype: Term
    meth: Term
    path: Term
    val: Term


class Set(NamedTuple):
    var: Term
    val: Term


class Put(NamedTuple):
    var: Term
    val: Term


class CAct(NamedTuple):
    cond: object
    acts: tuple


class ARule(NamedTuple):
    name: str
    mpat: object
    cacts: tuple


def ar(name: str, mpat, *cacts: CAct) -> ARule:
    return ARule(name, mpat, tuple(cacts))


def ca(cond, *acts) -> CAct:
    return CAct(cond, tuple(acts))


class Unbound(Exception):
    pass


def _bind(pat: Term, val: str, binds: dict) -> bool:
    if isinstance(pat, V):
        if pat.name in binds:
            return binds[pat.name] == val
        binds[pat.name] = val
        return True
    return pat == val


def match_pattern(mpat, msg: Msg) -> Optional[dict]:
    kind = classify(msg)
    binds: dict = {}
    body = get_body(msg)
    if isinstance(mpat, Req):
        if kind.kind != "Request":
            return None
        ok = (_bind(mpat.src, get_src(msg), binds) and _bind(mpat.meth, kind.method, binds)
              and _bind(mpat.path, get_path(msg) or "", binds)
              and (body == "" or _bind(mpat.val, body, binds)))
        return binds if ok else None
    if kind.kind != "Response" or kind.success != mpat.success:
        return None
    amid = mpat.amid if not isinstance(mpat.amid, V) else None
    if amid is not None and not tok_matches(get_tok(msg), amid):
        return None
    ok = _bind(mpat.src, get_src(msg), binds) and (body == "" or _bind(mpat.val, body, binds))
    return binds if ok else None


def resolve(term: Term, binds: dict, akb: tuple, rsrcs: tuple) -> str:
    if not isinstance(term, V):
        return term
    if term.name in binds:
        return binds[term.name]
    val = rmap_get(akb, term.name)
    if val is None:
        val = rmap_get(rsrcs, term.name)
    if val is None:
        raise Unbound(term.name)
    return val


def eval_cond(cond, binds: dict, akb: tuple, rsrcs: tuple) -> bool:
    try:
        if isinstance(cond, Eq):
            return resolve(cond.a, binds, akb, rsrcs) == resolve(cond.b, binds, akb, rsrcs)
        if isinstance(cond, Neq):
            return resolve(cond.a, binds, akb, rsrcs) != resolve(cond.b, binds, akb, rsrcs)
    except Unbound as exc:
        log.warning("unbound variable %s in condition", exc)
        return False
    if isinstance(cond, Conj):
        return all(eval_cond(c, binds, akb, rsrcs) for c in cond.conds)
    if isinstance(cond, Disj):
        return any(eval_cond(c, binds, akb, rsrcs) for c in cond.conds)
    raise TypeError(f"not a condition: {cond!r}")


def exec_action(act, binds: dict, ep: Endpoint) -> Endpoint:
    akb, rsrcs = ep.aconf.akb, ep.rsrcs
    r = lambda t: resolve(t, binds, akb, rsrcs)  # noqa: E731
    try:
        if isinstance(act, Send):
            amsg = AMsg(r(act.amid), r(act.tgt), r(act.mtype), r(act.meth), r(act.path), "", r(act.val))
            return ep._replace(send_reqs=ep.send_reqs + (amsg,))
        if isinstance(act, Set):
            return ep._replace(aconf=AConf(rmap_set(akb, r(act.var), r(act.val)), ep.aconf.rules))
        if isinstance(act, Put):
            return ep._replace(rsrcs=rmap_set(rsrcs, r(act.var), r(act.val)))
    except Unbound as exc:
        log.warning("unbound variable %s in action, skipped", exc)
        return ep
    raise TypeError(f"not an action: {act!r}")


def do_app(msg: Msg, ep: Endpoint) -> Endpoint:
    """Run every matching rule's enabled conditional actions.

    Conditions are all evaluated against the state before any action runs.
    """
    if ep.aconf is None:
        return ep
    rules = RULE_SETS[ep.aconf.rules]
    todo = []
    for rule in rules:
        binds = match_pattern(rule.mpat, msg)
        if binds is None:
            continue
        for cact in rule.cacts:
            if eval_cond(cact.cond, binds, ep.aconf.akb, ep.rsrcs):
                todo.extend((act, binds) for act in cact.acts)
    for act, binds in todo:
        ep = exec_action(act, binds, ep)
    return ep


# -- bridge ---------------------------------------------------------------

def bridge_rules() -> tuple:
    put = lambda amid, tgt, path, val: Send(amid, tgt, "NON", "PUT", path, val)  # noqa: E731
    return (
        ar("rcvBoatArr", Req("bs", "PUT", "boat", "here"),
           ca(Eq(V("status"), "idle"), put("GateCL", "ga", "gate", "close"),
              Set("status", "working"))),
        ar("rcvGateClose", Rsp("ga", "GateCL", True, ""),
           ca(TRUE, put("BridgeOp", "br", "bridge", "open"))),
        ar("rcvBridgeOpen", Rsp("br", "BridgeOp", True, ""),
           ca(TRUE, put("BSPass", "bs", "boat", "pass"))),
        ar("rcvBoatPass", Rsp("bs", "BSPass", True, ""),
           ca(TRUE, put("BridgeCl", "br", "bridge", "close"))),
        ar("rcvBridgeClose", Rsp("br", "BridgeCl", True, ""),
           ca(TRUE, put("GateOp", "ga", "gate", "open"))),
        ar("rcvGateOpen", Rsp("ga", "GateOp", True, ""),
           ca(TRUE, Set("status", "idle"))),
    )


# -- pick-n-place --------------------------------------------------------------

def pnp_rules() -> tuple:
    put = lambda amid, tgt, path, val: Send(amid, tgt, "NON", "PUT", path, val)  # noqa: E731
    from_arm = Eq(V("src"), V("myarm"))
    from_grip = Eq(V("src"), V("mygrip"))
    return (
        ar("rcvStart", Req(V("src"), "PUT", "start", V("any")),
           ca(Eq(V("status"), "idle"), put("ArmGoNI", V("myarm"), "arm", V("goNI")),
              Set("status", "working"), Set("source", V("src")))),
        ar("rcvAtNI", Rsp(V("src"), "ArmGoNI", True, ""),
           ca(from_arm, put("GripCl", V("mygrip"), "grip", "close"))),
        ar("rcvGrCl", Rsp(V("src"), "GripCl", True, ""),
           ca(from_grip, put("ArmGoI", V("myarm"), "arm", V("goI")))),
        ar("rcvAtI", Rsp(V("src"), "ArmGoI", True, ""),
           ca(from_arm, put("GripOp", V("mygrip"), "grip", "open"))),
        ar("rcvGrOp", Rsp(V("src"), "GripOp", True, ""),
           ca(from_grip, put("PnPDone", V("source"), "pnp", "done"))),
        ar("rcvPnPDone", Rsp(V("src"), "PnPDone", True, ""),
           ca(Eq(V("src"), V("source")), Set("status", "idle"))),
    )


RULE_SETS = {"bridge-rules": bridge_rules(), "pnp-rules": pnp_rules(), "none": ()}
