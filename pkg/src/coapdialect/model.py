"""Term algebra for CoAP systems.

Every value is an immutable tuple.  Multisets are stored as sorted tuples so
that two systems that differ only in the order of a multiset compare and hash
equal; this stands in for matching modulo associativity and commutativity.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Union

CON, NON, ACK, RST = "CON", "NON", "ACK", "RST"
MSG_TYPES = (CON, NON, ACK, RST)

METHOD_CODES = {"GET": "0.01", "POST": "0.02", "PUT": "0.03", "DELETE": "0.04"}
CODE_METHODS = {code: meth for meth, code in METHOD_CODES.items()}
EMPTY_CODE = ""

URI_PATH = "Uri-Path"
RCNT = "rcnt"

INF = float("inf")


def ms(items: Iterable) -> tuple:
    """Canonical multiset: a sorted tuple."""
    return tuple(sorted(items))


def ms_add(bag: tuple, *items) -> tuple:
    return tuple(sorted(bag + items))


def ms_remove(bag: tuple, item) -> tuple:
    """Remove one occurrence of item."""
    ix = bag.index(item)
    return bag[:ix] + bag[ix + 1:]


def distinct(bag: tuple) -> list:
    """Distinct elements of a sorted multiset, preserving order."""
    out = []
    for x in bag:
        if not out or out[-1] != x:
            out.append(x)
    return out


# -- messages ---------------------------------------------------------------

class Content(NamedTuple):
    mtype: str
    code: str
    mid: str
    tok: str
    opts: tuple = ()          # sorted (name, value) pairs
    body: str = ""            # "" is the empty body


class DCBits(NamedTuple):
    """Sealed lingo encoding.  Only f2 with the same generator output opens it."""
    grand: str
    ix: int
    content: Content


class DContent(NamedTuple):
    bits: DCBits
    ix: int


Payload = Union[Content, DContent]


class Msg(NamedTuple):
    tgt: str
    src: str
    payload: Payload


class DMsg(NamedTuple):
    msg: Msg
    delay: int
    anytime: bool = False


def mk_opts(**named) -> tuple:
    return ms(named.items())


def opts_with(opts: tuple, name: str, value) -> tuple:
    return ms([(k, v) for k, v in opts if k != name] + [(name, value)])


def opts_without(opts: tuple, name: str) -> tuple:
    return tuple((k, v) for k, v in opts if k != name)


def opt_value(opts: tuple, name: str, default=None):
    for k, v in opts:
        if k == name:
            return v
    return default


def is_dialected(msg: Msg) -> bool:
    return isinstance(msg.payload, DContent)


def _content(msg: Msg) -> Content:
    if isinstance(msg.payload, DContent):
        raise TypeError("selector applied to dialected content")
    return msg.payload


def get_tgt(msg: Msg) -> str:
    return msg.tgt


def get_src(msg: Msg) -> str:
    return msg.src


def get_type(msg: Msg) -> str:
    return _content(msg).mtype


def get_code(msg: Msg) -> str:
    return _content(msg).code


def get_mid(msg: Msg) -> str:
    return _content(msg).mid


def get_tok(msg: Msg) -> str:
    return _content(msg).tok


def get_path(msg: Msg) -> Optional[str]:
    return opt_value(_content(msg).opts, URI_PATH)


def get_body(msg: Msg) -> str:
    return _content(msg).body


def selectors(msg: Msg) -> dict:
    if is_dialected(msg):
        return {"tgt": msg.tgt, "src": msg.src}
    c = msg.payload
    return {"type": c.mtype, "code": c.code, "mid": c.mid, "token": c.tok,
            "path": opt_value(c.opts, URI_PATH), "tgt": msg.tgt,
            "src": msg.src, "body": c.body}


def with_payload(msg: Msg, payload: Payload) -> Msg:
    return Msg(msg.tgt, msg.src, payload)


def set_tgt_src(msg: Msg, tpat: str, spat: str) -> Msg:
    return Msg(tpat or msg.tgt, spat or msg.src, msg.payload)


class Classified(NamedTuple):
    kind: str                 # Request | Response | Empty | Unknown
    method: Optional[str] = None
    success: Optional[bool] = None


def classify(msg: Msg) -> Classified:
    code = get_code(msg)
    if code in CODE_METHODS:
        return Classified("Request", method=CODE_METHODS[code])
    if code == EMPTY_CODE:
        if get_type(msg) in (ACK, RST):
            return Classified("Empty")
        return Classified("Unknown")
    cls, _, detail = code.partition(".")
    if cls in ("2", "4", "5") and detail.isdigit():
        return Classified("Response", success=(cls == "2"))
    return Classified("Unknown")


# -- identifiers --------------------------------------------------------------

def gen_mid(prefix: str, n: int) -> str:
    return f"{prefix}-m{n}"


def gen_tok(prefix: str, n: int) -> str:
    return f"{prefix}-t{n}"


def id_number(ident: str) -> int:
    """Counter value embedded in a generated mid or token."""
    return int(ident.rsplit("-", 1)[1][1:])


def tok_matches(tok: str, aid: str) -> bool:
    """A token matches an application id when it was generated for it.

    Tokens look like "<epid>-<appId>-t<n>"; the empty id matches anything.
    """
    return aid == "" or f"-{aid}-t" in tok


# -- application messages ------------------------------------------------------

class AMsg(NamedTuple):
    appid: str
    tgt: str
    mtype: str
    meth: str
    path: str
    qparams: str = ""
    body: str = ""


class Pause(NamedTuple):
    duration: int


# -- configuration -------------------------------------------------------------

class Config(NamedTuple):
    ack_timeout: int = 5
    ack_random_factor: int = 2
    max_retransmit: int = 1
    msg_sd: int = 2
    msg_qd: int = 5
    w4ack_bd: int = 0
    ttl: int = 10

    def get(self, name: str) -> int:
        return getattr(self, CONFIG_NAMES[name])

    def as_map(self) -> dict:
        return {name: self.get(name) for name in CONFIG_NAMES}


CONFIG_NAMES = {"ACK_TIMEOUT": "ack_timeout", "ACK_RANDOM_FACTOR": "ack_random_factor",
                "MAX_RETRANSMIT": "max_retransmit", "msgSD": "msg_sd",
                "msgQD": "msg_qd", "w4AckBd": "w4ack_bd", "ttl": "ttl"}


def mk_coap_conf(mqd: int, w4ab: int, msg_sd: int = 2) -> Config:
    return Config(msg_qd=mqd, w4ack_bd=w4ab, msg_sd=msg_sd)


# -- agents ----------------------------------------------------------------

class AConf(NamedTuple):
    akb: tuple                # sorted (name, value)
    rules: str                # name of a registered rule set


class Endpoint(NamedTuple):
    eid: str
    send_reqs: tuple = ()
    rsrcs: tuple = ()         # sorted (path, value)
    w4ack: tuple = ()         # sorted DMsg
    w4rsp: tuple = ()         # sorted Msg
    rsp_sntd: tuple = ()      # sorted DMsg
    rsp_rcd: tuple = ()       # sorted Msg
    ctr: int = 0
    snd_ctr: int = 0
    config: Config = Config()
    aconf: Optional[AConf] = None


class Attacker(NamedTuple):
    eid: str
    kb: tuple = ()            # sorted DMsg
    caps: tuple = ()          # sorted capabilities


class Wrapper(NamedTuple):
    """Dialect meta-agent around an endpoint and its local network."""
    eid: str
    inner: Endpoint
    lin: tuple = ()
    lout: tuple = ()
    seed_to: tuple = ()       # sorted (peer, seed)
    seed_fr: tuple = ()
    ix_ctr: tuple = ()        # sorted (peer, n)
    used: tuple = ()          # sorted (peer, sorted ix tuple)
    rand_size: int = 128


Agent = Union[Endpoint, Attacker, Wrapper]


class RcvP(NamedTuple):
    epid: str
    path: str
    val: str


class System(NamedTuple):
    agents: tuple             # sorted by eid
    nin: tuple = ()
    nout: tuple = ()
    log: Optional[tuple] = None

    def agent(self, eid: str) -> Optional[Agent]:
        for a in self.agents:
            if a.eid == eid:
                return a
        return None

    def with_agent(self, agent: Agent) -> "System":
        agents = tuple(agent if a.eid == agent.eid else a for a in self.agents)
        return self._replace(agents=agents)


def rmap_get(rmap: tuple, key: str) -> Optional[str]:
    for k, v in rmap:
        if k == key:
            return v
    return None


def rmap_set(rmap: tuple, key: str, val: str) -> tuple:
    return ms([(k, v) for k, v in rmap if k != key] + [(key, val)])


def rmap_del(rmap: tuple, key: str) -> tuple:
    return tuple((k, v) for k, v in rmap if k != key)


def rb(*pairs) -> tuple:
    """Resource map from alternating path, value arguments."""
    if len(pairs) % 2:
        raise ValueError("rb needs path/value pairs")
    return ms(zip(pairs[0::2], pairs[1::2]))


def mk_system(agents: Iterable[Agent], log: Optional[tuple] = None,
              nin: Iterable[DMsg] = (), nout: Iterable[DMsg] = ()) -> System:
    agents = tuple(agents)
    ids = [a.eid for a in agents]
    if len(set(ids)) != len(ids):
        raise ValueError(f"duplicate agent ids: {ids}")
    return System(tuple(sorted(agents, key=lambda a: a.eid)), ms(nin), ms(nout), log)


def endpoint_view(agent: Agent) -> Optional[Endpoint]:
    """The protocol endpoint of an agent, looking through dialect wrappers."""
    if isinstance(agent, Endpoint):
        return agent
    if isinstance(agent, Wrapper):
        return agent.inner
    return None


def find_endpoint(sys: System, eid: str) -> Optional[Endpoint]:
    a = sys.agent(eid)
    return endpoint_view(a) if a is not None else None


def attackers(sys: System) -> list:
    return [a for a in sys.agents if isinstance(a, Attacker)]


def canonicalize(sys: System) -> System:
    """Rebuild every multiset in sorted order.

    Values built through this module are already canonical; this is for
    systems assembled by hand.
    """
    def ep(e: Endpoint) -> Endpoint:
        return e._replace(rsrcs=ms(e.rsrcs), w4ack=ms(e.w4ack), w4rsp=ms(e.w4rsp),
                          rsp_sntd=ms(e.rsp_sntd), rsp_rcd=ms(e.rsp_rcd),
                          aconf=None if e.aconf is None else
                          AConf(ms(e.aconf.akb), e.aconf.rules))

    def msg(m: Msg) -> Msg:
        p = m.payload
        return m if isinstance(p, DContent) else Msg(m.tgt, m.src, p._replace(opts=ms(p.opts)))

    def dm(d: DMsg) -> DMsg:
        return d._replace(msg=msg(d.msg))

    out = []
    for a in sys.agents:
        if isinstance(a, Endpoint):
            out.append(ep(a))
        elif isinstance(a, Attacker):
            from .attack import caps_ms
            out.append(Attacker(a.eid, ms(map(dm, a.kb)), caps_ms(a.caps)))
        else:
            out.append(a._replace(inner=ep(a.inner), lin=ms(map(dm, a.lin)), lout=ms(map(dm, a.lout)),
                                  seed_to=ms(a.seed_to), seed_fr=ms(a.seed_fr),
                                  ix_ctr=ms(a.ix_ctr),
                                  used=ms((k, ms(v)) for k, v in a.used)))
    return System(tuple(sorted(out, key=lambda a: a.eid)), ms(map(dm, sys.nin)),
                  ms(map(dm, sys.nout)), sys.log)
