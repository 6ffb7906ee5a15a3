"""Initial configurations, application-message constructors and the experiment table."""

from __future__ import annotations

import re
from typing import Callable, NamedTuple, Optional

from . import props as P
from .attack import (MCX, act, delay, drop, mc, mk_attacker, redirect, replay,
                     unredirect)
from .model import (AConf, AMsg, Config, Endpoint, Pause, System, mk_coap_conf,
                    mk_system, rb)
from .props import rcvp

# -- application messages ------------------------------------------------------

def mk_get_c(aid, tgt, path) -> AMsg:
    return AMsg(aid, tgt, "CON", "GET", path, "", "")


def mk_get_n(aid, tgt, path) -> AMsg:
    return AMsg(aid, tgt, "NON", "GET", path, "", "")


def mk_put_c(aid, tgt, path, val) -> AMsg:
    return AMsg(aid, tgt, "CON", "PUT", path, "", val)


def mk_put_n(aid, tgt, path, val) -> AMsg:
    return AMsg(aid, tgt, "NON", "PUT", path, "", val)


def mk_del_n(aid, tgt, path) -> AMsg:
    return AMsg(aid, tgt, "NON", "DELETE", path, "", "")


def amsgd(n: int) -> tuple:
    """A pause between application messages; nothing when n is 0."""
    return (Pause(n),) if n > 0 else ()


def mk_sig_ams(n: int, d: int) -> tuple:
    """Task j on devj: sig on, then after d, sig off; for j = 1..n."""
    out: tuple = ()
    for j in range(1, n + 1):
        dev = f"dev{j}"
        out += (mk_put_n("putN", dev, "sig", "on"),) + amsgd(d) + (mk_put_n("putN", dev, "sig", "off"),)
    return out


def mk_go_ams(n: int) -> tuple:
    return tuple(mk_put_n("putN", f"dev{j}", "sig", "go") for j in range(1, n + 1))


def start_amsg(tgt: str = "pctl", aid: str = "PUTS") -> AMsg:
    return mk_put_n(aid, tgt, "start", "go")


BOAT_HERE = mk_put_n("BoatHere", "bctl", "boat", "here")

# -- agents and systems -------------------------------------------------------------

def mk_dev_c(n: int, j: int, amsgl, rbnds, mqd: int, w4ab: int) -> Endpoint:
    return Endpoint(f"dev{n}", send_reqs=tuple(amsgl), rsrcs=tuple(sorted(rbnds)),
                    snd_ctr=j, config=mk_coap_conf(mqd, w4ab))


def mk_att(caps) -> list:
    caps = list(caps)
    return [mk_attacker("eve", caps)] if caps else []


def tcs2c(n0, j0, amsgl0, rbnds0, mqd0, w4ab0, n1, j1, amsgl1, rbnds1, mqd1, w4ab1, caps) -> System:
    return mk_system([mk_dev_c(n0, j0, amsgl0, rbnds0, mqd0, w4ab0),
                      mk_dev_c(n1, j1, amsgl1, rbnds1, mqd1, w4ab1)] + mk_att(caps), log=())


def tcs3c(n0, j0, amsgl0, rbnds0, mqd0, w4ab0, n1, j1, amsgl1, rbnds1, mqd1, w4ab1,
          n2, j2, amsgl2, rbnds2, mqd2, w4ab2, caps) -> System:
    return mk_system([mk_dev_c(n0, j0, amsgl0, rbnds0, mqd0, w4ab0),
                      mk_dev_c(n1, j1, amsgl1, rbnds1, mqd1, w4ab1),
                      mk_dev_c(n2, j2, amsgl2, rbnds2, mqd2, w4ab2)] + mk_att(caps), log=())


def tcs(amsgl, rbnds1, caps) -> System:
    return tcs2c(0, 0, amsgl, (), 5, 0, 1, 1, (), rbnds1, 5, 0, caps)


def tcss(amsgl, rbnds1, rbnds2, caps) -> System:
    return tcs3c(0, 0, amsgl, (), 5, 0, 1, 1, (), rbnds1, 5, 0, 2, 1, (), rbnds2, 5, 0, caps)


def cns(n: int, amsgl, rbnds, mqd: int, w4ab: int, caps=()) -> System:
    devs = [mk_dev_c(0, 0, amsgl, (), mqd, w4ab)]
    devs += [mk_dev_c(i, i, (), rbnds, 5, 0) for i in range(1, n + 1)]
    return mk_system(devs + mk_att(caps), log=())


# -- sample scenarios ----------------------------------------------------------

def isys0() -> System:
    return tcs((mk_put_c("putCDU", "dev1", "door", "unlock"),
                mk_put_n("putNSG", "dev1", "sig", "go"),
                mk_put_c("putCDL", "dev1", "door", "lock")), rb("door", "lock"), ())


def _isys12(caps) -> System:
    return tcs((mk_put_c("putNDU", "dev1", "door", "unlock"),
                mk_put_n("putNSG", "dev1", "sig", "go"),
                mk_put_c("putNDL", "dev1", "door", "lock")), rb("door", "lock"), caps)


def isys1() -> System:
    return _isys12([drop()])


def isys2() -> System:
    return _isys12([replay(10)])


def _isys3(active: bool) -> System:
    return tcss((mk_get_n("getN", "dev1", "door"),), rb("door", "unlock"), rb("door", "lock"),
                [mc("dev1", "dev0", active, act("dev2", "dev0", 0)),
                 mc("dev0", "dev2", active, act("dev0", "dev1", 0))])


def isys3a() -> System:
    return _isys3(True)


def isys3r() -> System:
    return _isys3(False)


# -- reactive attacks ------------------------------------------------------------

def ra_r1(mqd: int, w4b: int, d: int, nso: bool) -> System:
    amsgl = (mk_put_n("putNDL", "dev1", "door", "lock"),
             mk_put_n("putNDU", "dev1", "door", "unlock"))
    if nso:
        amsgl += (mk_put_n("putNS", "dev1", "signal", "on"),)
    return tcs2c(0, 0, amsgl, (), mqd, w4b,
                 1, 1, (), rb("door", "unlock", "sig", "off"), 2, 0,
                 [mc("dev1", "dev0", False, act("", "", d))])


def caps_x(level: int) -> list:
    return [mc("dev1", "dev0", False, *[act(f"dev{k}", "", 0) for k in range(2, level + 2)])]


def isys_x(n: int, d: int, caps) -> System:
    return cns(n, mk_sig_ams(n, d), rb("sig", "off"), 5, 0, caps)


def caps_y(n: int, d: int) -> list:
    return [mc(f"dev{k}", "dev0", False, act(f"dev{k + n}", "dev0", d)) for k in range(1, n + 1)]


def isys_y(n: int, caps) -> System:
    return cns(2 * n, mk_go_ams(n), rb("sig", "off"), 5, 0, caps)


def isys_z(mqd: int, w4b: int) -> System:
    return tcs3c(0, 0, (mk_get_n("getN0", "dev1", "door"),), (), mqd, w4b,
                 1, 1, (), rb("door", "unlock"), 5, 0,
                 2, 2, (), rb("door", "lock"), 5, 0,
                 [mc("dev1", "dev0", False, act("dev2", "", 0)),
                  mc("dev0", "dev2", False, act("", "dev1", 0))])


# -- vulnerability figures ---------------------------------------------------------

def _fig(amsgl, rbnds, mqd, w4b, caps) -> System:
    return tcs2c(0, 0, amsgl, (), mqd, w4b, 1, 1, (), rbnds, 2, 0, caps)


def ca_fig12(mqd: int, w4b: int) -> System:
    return _fig((mk_put_n("putN", "dev1", "door", "lock"),), rb("door", "unlocked"), mqd, w4b,
                [drop()])


def ca_fig3(d: int, mqd: int, w4b: int) -> System:
    return _fig((mk_put_n("putND", "dev1", "door", "unlock"),
                 mk_put_n("putNS", "dev1", "signal", "on")), rb("door", "lock"), mqd, w4b,
                [drop(), delay(d)])


def ca_fig4x(n: int, mqd: int, w4b: int) -> System:
    return _fig((mk_put_c("putC", "dev1", "door", "unlock"),
                 mk_put_n("putN", "dev1", "door", "lock")), rb("door", "lock"), mqd, w4b,
                [drop(), delay(n)])


def ca_fig5x(d: int, mqd: int, w4b: int) -> System:
    return _fig((mk_put_n("putNU", "dev1", "door", "unlock"),
                 mk_put_n("putNL", "dev1", "door", "lock")), rb("door", "lock"), mqd, w4b,
                [drop(), delay(d)])


def ca_fig6x(d: int, mqd: int, w4b: int) -> System:
    return _fig((mk_get_n("getN0", "dev1", "door"),
                 mk_put_n("putNU", "dev1", "door", "unlock"),
                 mk_get_n("getN1", "dev1", "door")), rb("door", "lock"), mqd, w4b,
                [drop(), drop(), delay(d)])


def ca_fig7x(d: int, mqd: int, w4b: int) -> System:
    return _fig((mk_get_n("getN0", "dev1", "door1"), mk_get_n("getN1", "dev1", "door2")),
                rb("door1", "lock", "door2", "unlock"), mqd, w4b, [drop(), delay(d)])


def ca_fig7mod(mqd: int, w4b: int) -> System:
    return tcs3c(0, 0, (mk_get_n("getN0", "dev1", "door"),), (), mqd, w4b,
                 1, 1, (), rb("door", "unlock"), 5, 0,
                 2, 2, (), rb("door", "lock"), 5, 0,
                 [redirect("dev1", "dev2"), unredirect("dev1", "dev2")])


# -- applications -------------------------------------------------------------------

APP_MSG_QD = 0


def mk_dev_a(epid: str, j: int, amsgl, rbnds, msg_sd: int, abnds=(), arules: Optional[str] = None
             ) -> Endpoint:
    aconf = AConf(tuple(sorted(abnds)), arules) if arules else None
    return Endpoint(epid, send_reqs=tuple(amsgl), rsrcs=tuple(sorted(rbnds)), snd_ctr=j,
                    config=Config(msg_sd=msg_sd, msg_qd=APP_MSG_QD, w4ack_bd=0), aconf=aconf)


def _bridge(bs_amsgl, caps) -> System:
    return mk_system([
        mk_dev_a("bctl", 1, (), rb("boat", "none"), 2, rb("status", "idle"), "bridge-rules"),
        mk_dev_a("bs", 1, bs_amsgl, (), 6),
        mk_dev_a("ga", 1, (), rb("gate", "open"), 4),
        mk_dev_a("br", 1, (), rb("bridge", "close"), 6),
    ] + mk_att(caps), log=())


def br_init(caps=()) -> System:
    return _bridge((BOAT_HERE,), caps)


def br_init2(n: int, caps=()) -> System:
    return _bridge((BOAT_HERE,) + amsgd(n) + (BOAT_HERE,), caps)


def init_rl(pid: str = "pctl", gid: str = "gr", aid: str = "arm", amsgl=None, caps=()) -> System:
    if amsgl is None:
        amsgl = (start_amsg(pid),)
    akb = rb("status", "idle", "myarm", aid, "mygrip", gid, "goNI", "goR", "goI", "goL")
    return mk_system([
        mk_dev_a(pid, 1, (), (), 2, akb, "pnp-rules"),
        mk_dev_a(aid, 1, (), rb("arm", "goL"), 6),
        mk_dev_a(gid, 1, (), rb("grip", "open"), 4),
        mk_dev_a("ps", 1, tuple(amsgl), (), 2),
    ] + mk_att(caps), log=())


def pnp_rounds(rounds: int, gap: int = 40, pid: str = "pctl") -> tuple:
    out: tuple = (start_amsg(pid),)
    for _ in range(rounds - 1):
        out += amsgd(gap) + (start_amsg(pid),)
    return out


# -- registry ----------------------------------------------------------------------

SCENARIOS: dict = {
    "iSys0": isys0, "iSys1": isys1, "iSys2": isys2, "iSys3a": isys3a, "iSys3r": isys3r,
    "raR1": ra_r1, "iSysX": isys_x, "iSysY": isys_y, "iSySZ": isys_z,
    "caFig1.2": ca_fig12, "caFig3": ca_fig3, "caFig4x": ca_fig4x, "caFig5x": ca_fig5x,
    "caFig6x": ca_fig6x, "caFig7x": ca_fig7x, "caFig7mod": ca_fig7mod,
    "brInit": br_init, "brInit2": br_init2, "initRL": init_rl,
    "tCS": tcs, "tCSS": tcss, "CnS": cns,
}

CAPS: dict = {
    "drop": lambda: [drop()], "delay": lambda n: [delay(n)], "replay": lambda n: [replay(n)],
    "redirect": lambda a, b: [redirect(a, b)], "unredirect": lambda a, b: [unredirect(a, b)],
    "caps-1": lambda: caps_x(1), "caps-2": lambda: caps_x(2), "caps-3": lambda: caps_x(3),
    "caps2-2": lambda d: caps_y(2, d), "caps3-3": lambda d: caps_y(3, d),
    "mcX": lambda n: [MCX(n)], "mtC": lambda: [],
}

AMSGS: dict = {
    "startAMsg": lambda tgt="pctl", aid="PUTS": [start_amsg(tgt, aid)],
    "pnpRounds": lambda n, gap=40: list(pnp_rounds(n, gap)),
    "mkSigAMs": lambda n, d: list(mk_sig_ams(n, d)), "mkGoAMs": lambda n: list(mk_go_ams(n)),
    "mkPutN": lambda *a: [mk_put_n(*a)], "mkPutC": lambda *a: [mk_put_c(*a)],
    "mkGetN": lambda *a: [mk_get_n(*a)], "mkGetC": lambda *a: [mk_get_c(*a)],
}

VALUES: dict = {"rb": rb}


class ScenarioError(ValueError):
    pass


_CALL = re.compile(r'\s*("[^"]*"|[()+,]|[^\s()+,]+)')


def _apply(name: str, fn, args):
    try:
        return fn(*args)
    except TypeError as exc:
        raise ScenarioError(f"bad arguments to {name}: {exc}") from exc


def parse_call(text: str):
    """Evaluate a scenario expression such as 'iSysX(3,0,caps-2)'.

    Arguments are integers, true/false, quoted or bare strings, rb(...)
    resource maps, capability or message-list expressions; '+' joins lists.
    """
    toks = _CALL.findall(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ScenarioError(f"unexpected end of {text!r}")
        pos += 1
        return toks[pos - 1]

    def expr(top=False):
        val = term(top)
        while peek() == "+":
            take()
            val = list(val) + list(term(False))
        return val

    def term(top):
        tok = take()
        args = []
        if peek() == "(":
            take()
            while peek() != ")":
                args.append(expr())
                if peek() == ",":
                    take()
            take()
        if top:
            if tok not in SCENARIOS:
                raise ScenarioError(f"unknown scenario {tok!r}")
            return _apply(tok, SCENARIOS[tok], args)
        for table in (CAPS, AMSGS, VALUES):
            if tok in table:
                return _apply(tok, table[tok], args)
        if args:
            raise ScenarioError(f"unknown function {tok!r}")
        if tok.startswith('"'):
            return tok[1:-1]
        if tok in ("true", "false"):
            return tok == "true"
        if re.fullmatch(r"\d+", tok):
            return int(tok)
        return tok

    result = expr(top=True)
    if pos != len(toks):
        raise ScenarioError(f"trailing input in {text!r}")
    return result


# -- the experiment table --------------------------------------------------------------

class Experiment(NamedTuple):
    key: str
    group: str
    scenario: str
    build: Callable[[], System]
    goal: P.Prop
    mode: str = "final"
    bound: Optional[int] = None
    caps_exhausted: bool = False
    dialected: bool = False
    solutions: Optional[int] = None      # expected count
    visited: Optional[int] = None        # reported count
    at_least_one: Optional[bool] = None  # for the application tables
    max_states: Optional[int] = None


def _b(text: str):
    return lambda: parse_call(text)


def _vulnerabilities() -> list:
    E = []
    fig1 = P.all_of(~P.has_rsp_t_snt("dev1", "dev0", "putN"), P.rsp_pend("dev0", "dev1", "putN"))
    fig1r = P.check_rsrc("dev1", "door", "unlocked")
    fig2 = P.all_of(P.has_rsp_t_snt("dev1", "dev0", "putN"), P.check_rsrc("dev1", "door", "lock"),
                    P.rsp_pend("dev0", "dev1", "putN"))
    fig12f = P.all_of(P.has_rsp_t_snt("dev1", "dev0", "putN"), P.has_rsp_t_rcd("dev0", "dev1", "putN"))
    s = "caFig1.2(5,0)"
    E += [Experiment("fig1-request-drop", "vulnerabilities", s, _b(s), fig1, caps_exhausted=True, solutions=2, visited=7),
          Experiment("fig1-request-drop-D", "vulnerabilities", s, _b(s), fig1, caps_exhausted=True, dialected=True, solutions=2, visited=9),
          Experiment("fig1-resource", "vulnerabilities", s, _b(s), fig1r, caps_exhausted=True, solutions=2, visited=7),
          Experiment("fig1-resource-D", "vulnerabilities", s, _b(s), fig1r, caps_exhausted=True, dialected=True, solutions=2, visited=9),
          Experiment("fig2-response-drop", "vulnerabilities", s, _b(s), fig2, caps_exhausted=True, solutions=2, visited=13),
          Experiment("fig12-no-drop", "vulnerabilities", s, _b(s), fig12f, caps_exhausted=True, solutions=0)]

    s = "caFig3(15,5,0)"
    fig3 = P.all_of(P.check_rsrc("dev1", "door", "unlock"),
                    P.rsp_t_snt_before("dev1", "dev0", "putNS", "putND"), P.rsp_pend("dev0", "dev1", "putND"))
    fig3f = P.all_of(P.check_rsrc("dev1", "door", "unlock"),
                     P.rsp_t_snt_before("dev1", "dev0", "putND", "putNS"), P.has_rsp_t_rcd("dev0", "dev1", "putND"))
    E += [Experiment("fig3-success", "vulnerabilities", s, _b(s), fig3, caps_exhausted=True, solutions=4, visited=330),
          Experiment("fig3-success-D", "vulnerabilities", s, _b(s), fig3, caps_exhausted=True, dialected=True, solutions=4, visited=496),
          Experiment("fig3-fail", "vulnerabilities", s, _b(s), fig3f, caps_exhausted=True, solutions=4)]

    s = "caFig4x(10,5,0)"
    both = [P.has_rsp_t_snt("dev1", "dev0", "putC"), P.has_rsp_t_snt("dev1", "dev0", "putN"),
            P.rsp_t_snt_before("dev1", "dev0", "putC", "putN")]
    rcvd = [P.has_rsp_t_rcd("dev0", "dev1", "putN"), P.has_rsp_t_rcd("dev0", "dev1", "putC")]
    fig4 = P.all_of(P.check_rsrc("dev1", "door", "unlock"), *both,
                    P.rsp_t_snt_before("dev1", "dev0", "putN", "putC"), *rcvd)
    fig4f = P.all_of(P.check_rsrc("dev1", "door", "lock"), *both, *rcvd)
    E += [Experiment("fig4-success", "vulnerabilities", s, _b(s), fig4, caps_exhausted=True, solutions=8, visited=2600),
          Experiment("fig4-success-D", "vulnerabilities", s, _b(s), fig4, caps_exhausted=True, dialected=True, solutions=16, visited=10167),
          Experiment("fig4-fail", "vulnerabilities", s, _b(s), fig4f, caps_exhausted=True, solutions=45, visited=2586)]

    s = "caFig5x(10,5,0)"
    fig5i = P.all_of(P.has_rsp_t_snt("dev1", "dev0", "putNU"), ~P.has_rsp_t_snt("dev1", "dev0", "putNL"),
                     P.check_rsrc("dev1", "door", "unlock"), P.has_rsp_t_rcd("dev0", "dev1", "putNL"))
    fig5a = P.all_of(P.has_rsp_t_snt("dev1", "dev0", "putNU"), P.has_rsp_t_snt("dev1", "dev0", "putNL"),
                     P.rsp_t_snt_before("dev1", "dev0", "putNL", "putNU"),
                     P.check_rsrc("dev1", "door", "unlock"), P.has_rsp_t_rcd("dev0", "dev1", "putNL"))
    E += [Experiment("fig5-intended", "vulnerabilities", s, _b(s), fig5i, caps_exhausted=True, solutions=0),
          Experiment("fig5-intended-D", "vulnerabilities", s, _b(s), fig5i, caps_exhausted=True, dialected=True, solutions=0),
          Experiment("fig5-alternative", "vulnerabilities", s, _b(s), fig5a, caps_exhausted=True, solutions=4, visited=330),
          Experiment("fig5-alternative-D", "vulnerabilities", s, _b(s), fig5a, caps_exhausted=True, dialected=True, solutions=4, visited=499)]

    s = "caFig6x(10,5,0)"
    server6 = [P.has_rsp_t_snt("dev1", "dev0", "getN0"), P.has_rsp_t_snt("dev1", "dev0", "putNU"),
               P.rsp_t_snt_before("dev1", "dev0", "getN0", "putNU"), P.check_rsrc("dev1", "door", "unlock"),
               ~P.has_rsp_t_snt("dev1", "dev0", "getN1")]
    fig6i = P.all_of(*server6, P.has_get_rsp("dev0", "dev1", "getN1", "lock"))
    fig6a = P.all_of(*server6, P.has_get_rsp("dev0", "dev1", "getN0", "lock"),
                     P.rsp_pend("dev0", "dev1", "getN1"), P.rsp_pend("dev0", "dev1", "putNU"))
    E += [Experiment("fig6-intended", "vulnerabilities", s, _b(s), fig6i, caps_exhausted=True, solutions=0),
          Experiment("fig6-intended-D", "vulnerabilities", s, _b(s), fig6i, caps_exhausted=True, dialected=True, solutions=0),
          Experiment("fig6-alternative", "vulnerabilities", s, _b(s), fig6a, caps_exhausted=True, solutions=18, visited=2742),
          Experiment("fig6-alternative-D", "vulnerabilities", s, _b(s), fig6a, caps_exhausted=True, dialected=True, solutions=18, visited=4675)]

    s = "caFig7x(10,5,0)"
    fig7 = P.all_of(P.has_rsp_t_snt("dev1", "dev0", "getN0"), ~P.has_rsp_t_snt("dev1", "dev0", "getN1"),
                    P.has_get_rsp("dev0", "dev1", "getN1", "lock"))
    E += [Experiment("fig7", "vulnerabilities", s, _b(s), fig7, caps_exhausted=True, solutions=0),
          Experiment("fig7-D", "vulnerabilities", s, _b(s), fig7, caps_exhausted=True, dialected=True, solutions=0)]

    s = "caFig7mod(5,0)"
    fig7m = P.all_of(~P.has_rsp_t_snt("dev1", "dev0", "getN0"), P.has_rsp_t_snt("dev2", "dev0", "getN0"),
                     P.check_rsrc("dev1", "door", "unlock"), P.has_get_rsp("dev0", "dev1", "getN0", "lock"))
    E += [Experiment("fig7mod", "vulnerabilities", s, _b(s), fig7m, caps_exhausted=True, solutions=4, visited=33),
          Experiment("fig7mod-D", "vulnerabilities", s, _b(s), fig7m, caps_exhausted=True, dialected=True, solutions=0, visited=21)]
    return E


def _samples() -> list:
    unlock = P.check_rsrc("dev1", "door", "unlock")
    lock = P.check_rsrc("dev1", "door", "lock")
    get_lock = P.all_of(unlock, P.has_get_rsp("dev0", "dev1", "getN", "lock"))
    return [
        Experiment("iSys0", "samples", "iSys0", isys0, unlock, bound=1, solutions=0),
        Experiment("iSys1", "samples", "iSys1", isys1, unlock, bound=1, solutions=0),
        Experiment("iSys2", "samples", "iSys2", isys2,
                   P.sub_lil(rcvp("dev1", "door", "lock"), rcvp("dev1", "door", "unlock")), solutions=2),
        Experiment("iSys3a", "samples", "iSys3a", isys3a, get_lock, solutions=4, visited=33),
        Experiment("iSys3r", "samples", "iSys3r", isys3r, get_lock, solutions=4, visited=109),
        Experiment("raR1-lock", "reactive", "raR1(5,0,10,false)", _b("raR1(5,0,10,false)"), lock,
                   solutions=2, visited=101),
        Experiment("raR1-signal", "reactive", "raR1(5,0,10,true)", _b("raR1(5,0,10,true)"),
                   P.all_of(lock, P.sub_lil(rcvp("dev1", "door", "unlock"), rcvp("dev1", "door", "lock"),
                                            rcvp("dev1", "signal", ""))), solutions=2, visited=231),
        Experiment("raR1-delay5", "reactive", "raR1(5,0,5,false)", _b("raR1(5,0,5,false)"), lock, solutions=0),
        Experiment("raR1-delay15", "reactive", "raR1(5,0,15,false)", _b("raR1(5,0,15,false)"), lock, solutions=0),
        Experiment("raR1-D", "dialect", "raR1(5,0,10,false)", _b("raR1(5,0,10,false)"), lock,
                   dialected=True, solutions=0, visited=121),
    ]


def _reactive() -> list:
    on2 = P.epswrb_gt("sig", "on", 1)
    on3 = P.epswrb_gt("sig", "on", 2)
    order = P.sub_lil(rcvp("dev1", "sig", "on"), rcvp("dev2", "sig", "on"), rcvp("dev1", "sig", "off"))
    order2 = P.sub_lil(rcvp("dev2", "sig", "on"), rcvp("dev3", "sig", "on"), rcvp("dev2", "sig", "off"))
    x1, x2 = "iSysX(3,0,caps-1)", "iSysX(3,0,caps-2)"
    g = lambda *ds: P.sub_lil(*[rcvp(d, "sig", "") for d in ds])  # noqa: E731
    return [
        Experiment("iSysX-caps1", "reactive", x1, _b(x1), on2, mode="plus", solutions=132, visited=767),
        Experiment("iSysX-caps2", "reactive", x2, _b(x2), on3, mode="plus", solutions=182, visited=721),
        Experiment("iSysX-order", "reactive", x2, _b(x2), order, mode="plus", solutions=342, visited=3598),
        Experiment("iSysX-order2", "reactive", x2, _b(x2), order & order2, mode="plus", solutions=62, visited=3594),
        Experiment("iSysX-caps1-D", "dialect", x1, _b(x1), on2, mode="plus", dialected=True, solutions=0, visited=553),
        Experiment("iSysY-2-0", "reactive", "iSysY(2,caps2-2(0))", _b("iSysY(2,caps2-2(0))"),
                   g("dev3", "dev4") & g("dev3", "dev2"), solutions=16, visited=534),
        Experiment("iSysY-2-15", "reactive", "iSysY(2,caps2-2(15))", _b("iSysY(2,caps2-2(15))"),
                   g("dev3", "dev4") & g("dev2", "dev3"), solutions=4, visited=179),
        Experiment("iSysY-3-0", "reactive", "iSysY(3,caps3-3(0))", _b("iSysY(3,caps3-3(0))"),
                   P.all_of(g("dev4", "dev5", "dev6"), g("dev1", "dev4", "dev2"), g("dev2", "dev5", "dev3", "dev6")),
                   solutions=8, visited=2845),
        Experiment("iSysY-3-15", "reactive", "iSysY(3,caps3-3(15))", _b("iSysY(3,caps3-3(15))"),
                   g("dev4", "dev5", "dev6") & g("dev3", "dev4"), solutions=8, visited=683),
        Experiment("iSySZ", "reactive", "iSySZ(5,0)", _b("iSySZ(5,0)"),
                   P.all_of(P.has_get_rsp("dev0", "dev1", "getN0", "lock"), P.check_rsrc("dev1", "door", "unlock")),
                   solutions=4, visited=109),
    ]


BRIDGE_INVS = {"bclIdleInv": P.bcl_idle_inv, "brNClInv": P.br_ncl_inv,
               "gateNClInv": P.gate_ncl_inv, "boatPassInv": P.boat_pass_inv}

# (invariant, rounds, mcX delay) -> attack expected
BRIDGE_TABLE = [
    ("bclIdleInv", 1, 20, True), ("bclIdleInv", 2, 40, True),
    ("brNClInv", 1, 20, True), ("brNClInv", 2, 20, True),
    ("gateNClInv", 1, 20, True), ("gateNClInv", 2, 20, True),
    ("boatPassInv", 1, 20, False), ("boatPassInv", 1, 40, False), ("boatPassInv", 2, 20, True),
]

PNP_INVS = {"pnpIdleInv": P.pnp_idle_inv, "armGoingIInv": P.arm_going_i_inv,
            "armGoingNIInv": P.arm_going_ni_inv, "gripClosingInv": P.grip_closing_inv,
            "gripOpeningInv": P.grip_opening_inv}

PNP_TABLE = [
    ("pnpIdleInv", 1, 20, True), ("pnpIdleInv", 2, 20, True),
    ("armGoingIInv", 1, 20, False), ("armGoingIInv", 1, 40, False), ("armGoingIInv", 2, 20, True),
    ("armGoingNIInv", 1, 0, False), ("armGoingNIInv", 1, 20, False), ("armGoingNIInv", 1, 40, False),
    ("armGoingNIInv", 2, 20, True),
    ("gripClosingInv", 1, 20, False), ("gripClosingInv", 1, 40, False), ("gripClosingInv", 2, 20, True),
    ("gripOpeningInv", 1, 20, False), ("gripOpeningInv", 1, 40, False),
    ("gripOpeningInv", 2, 20, None),
]

APP_STATE_CAP = 200_000


def _bridge_call(rounds: int, n: Optional[int]) -> str:
    caps = f"mcX({n})" if n is not None else "mtC"
    return f"brInit({caps})" if rounds == 1 else f"brInit2(40,{caps})"


def _pnp_call(rounds: int, n: Optional[int]) -> str:
    caps = f"mcX({n})" if n is not None else "mtC"
    return f'initRL(pctl,gr,arm,pnpRounds({rounds}),{caps})'


def _applications() -> list:
    E = []
    for name, inv in BRIDGE_INVS.items():
        for rounds in (1, 2):
            s = _bridge_call(rounds, None)
            E.append(Experiment(f"{name}-{rounds}-none", "bridge", s, _b(s), inv(), mode="plus",
                                solutions=0, max_states=APP_STATE_CAP))
    for name, rounds, n, attack in BRIDGE_TABLE:
        s = _bridge_call(rounds, n)
        E.append(Experiment(f"{name}-{rounds}-mcX{n}", "bridge", s, _b(s), BRIDGE_INVS[name](),
                            mode="plus", bound=1, at_least_one=attack, max_states=APP_STATE_CAP))
        E.append(Experiment(f"{name}-{rounds}-mcX{n}-D", "bridge", s, _b(s), BRIDGE_INVS[name](),
                            mode="plus", dialected=True, solutions=0, max_states=APP_STATE_CAP))
    for name, inv in PNP_INVS.items():
        for rounds in (1, 2):
            s = _pnp_call(rounds, None)
            E.append(Experiment(f"{name}-{rounds}-none", "pnp", s, _b(s), inv(), mode="plus",
                                solutions=0, max_states=APP_STATE_CAP))
    for name, rounds, n, attack in PNP_TABLE:
        s = _pnp_call(rounds, n)
        E.append(Experiment(f"{name}-{rounds}-mcX{n}", "pnp", s, _b(s), PNP_INVS[name](),
                            mode="plus", bound=1, at_least_one=attack, max_states=APP_STATE_CAP))
        E.append(Experiment(f"{name}-{rounds}-mcX{n}-D", "pnp", s, _b(s), PNP_INVS[name](),
                            mode="plus", dialected=True, solutions=0, max_states=APP_STATE_CAP))
    return E


def experiments() -> list:
    return _samples() + _reactive() + _vulnerabilities() + _applications()


SUITES = ("samples", "reactive", "dialect", "vulnerabilities", "bridge", "pnp")
