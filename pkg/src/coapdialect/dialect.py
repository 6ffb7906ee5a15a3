"""Protocol dialect: lingo codec, wrapper meta-agents and the D / UD transforms."""

from __future__ import annotations

import hashlib

from .model import (DCBits, DContent, DMsg, Endpoint, Msg, System, Wrapper, ms,
                    ms_add, ms_remove, rmap_get, rmap_set)

RAND_SIZE = 128


class DecodeFailure(Exception):
    pass


def g(seed: str, k: int, ix: int) -> str:
    """The ix-th pseudo-random string of k bits for a seed."""
    digest = hashlib.shake_256(f"{seed}\x00{ix}".encode()).hexdigest((k + 7) // 8)
    return digest


def f1(grand: str, content, ix: int) -> DCBits:
    return DCBits(grand, ix, content)


def f2(grand: str, dc: DContent):
    """Recover the content sealed by f1, or raise DecodeFailure."""
    bits = dc.bits
    if not isinstance(bits, DCBits) or bits.grand != grand or bits.ix != dc.ix:
        raise DecodeFailure(dc.ix)
    return bits.content


def seal(seed: str, k: int, ix: int, content) -> DContent:
    grand = g(seed, k, ix)
    return DContent(f1(grand, content, ix), ix)


def used_ixs(w: Wrapper, peer: str) -> tuple:
    return rmap_get(w.used, peer) or ()


def apply_dialect(w: Wrapper, dmsg: DMsg):
    """Seal an outgoing message.  Returns (wrapper, dialected DMsg) or None for an unknown peer."""
    tgt = dmsg.msg.tgt
    seed = rmap_get(w.seed_to, tgt)
    if seed is None:
        return None
    ix = rmap_get(w.ix_ctr, tgt)
    sealed = seal(seed, w.rand_size, ix, dmsg.msg.payload)
    w = w._replace(ix_ctr=rmap_set(w.ix_ctr, tgt, ix + 1))
    return w, DMsg(Msg(tgt, dmsg.msg.src, sealed), dmsg.delay, dmsg.anytime)


def decode_dialect(w: Wrapper, msg: Msg):
    """Open an incoming message.  Returns (wrapper, plain Msg or None)."""
    dc = msg.payload
    if not isinstance(dc, DContent) or dc.ix in used_ixs(w, msg.src):
        return w, None
    seed = rmap_get(w.seed_fr, msg.src)
    if seed is None:
        return w, None
    try:
        content = f2(g(seed, w.rand_size, dc.ix), dc)
    except DecodeFailure:
        return w, None
    used = rmap_set(w.used, msg.src, ms_add(used_ixs(w, msg.src), dc.ix))
    return w._replace(used=used), Msg(msg.tgt, msg.src, content)


# -- transforms -------------------------------------------------------------

def wrap(ep: Endpoint, peers) -> Wrapper:
    others = [p for p in peers if p != ep.eid]
    return Wrapper(
        eid=ep.eid, inner=ep,
        seed_to=ms((p, "xxxx" + p + ep.eid) for p in others),
        seed_fr=ms((p, "xxxx" + ep.eid + p) for p in others),
        ix_ctr=ms((p, 0) for p in others),
        used=(), rand_size=RAND_SIZE)


def D(sys: System) -> System:
    """Wrap every endpoint of an initial system in a dialect meta-agent."""
    if sys.nin or sys.nout:
        raise ValueError("D applies to initial systems with an empty network")
    peers = [a.eid for a in sys.agents if isinstance(a, Endpoint)]
    agents = tuple(wrap(a, peers) if isinstance(a, Endpoint) else a for a in sys.agents)
    return sys._replace(agents=agents)


def UD(sys: System) -> System:
    """Strip dialect wrappers, keeping the inner endpoints."""
    return sys._replace(agents=tuple(a.inner if isinstance(a, Wrapper) else a
                                     for a in sys.agents))


UDC = UD


def is_dialected_system(sys: System) -> bool:
    return any(isinstance(a, Wrapper) for a in sys.agents)


# -- wrapper rules ----------------------------------------------------------

def ddevsend_transitions(sys: System):
    for w in sys.agents:
        if not isinstance(w, Wrapper):
            continue
        for side in ("lin", "lout"):
            bag = getattr(w, side)
            for dmsg in dict.fromkeys(bag):
                if dmsg.msg.src != w.eid:
                    continue
                w1 = w._replace(**{side: ms_remove(bag, dmsg)})
                res = apply_dialect(w1, dmsg)
                if res is None:
                    yield f"ddevsend {w.eid} drop", sys.with_agent(w1)
                    continue
                w2, out = res
                yield (f"ddevsend {w.eid}->{out.msg.tgt} ix {out.msg.payload.ix}",
                       sys.with_agent(w2)._replace(nin=ms_add(sys.nin, out)))


def local_net_transitions(sys: System):
    for w in sys.agents:
        if not isinstance(w, Wrapper):
            continue
        for dmsg in dict.fromkeys(w.lin):
            w2 = w._replace(lin=ms_remove(w.lin, dmsg), lout=ms_add(w.lout, dmsg))
            yield f"net {w.eid} local", sys.with_agent(w2)


def wrapper_mte(w: Wrapper):
    from .coap import endpoint_mte
    if w.lin or w.lout:
        return 0
    return endpoint_mte(w.inner)

