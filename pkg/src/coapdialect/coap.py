"""CoAP endpoint behaviour: sending, receiving, retransmission and time."""

from __future__ import annotations

import contextlib
from typing import NamedTuple

from .model import (ACK, CON, EMPTY_CODE, INF, METHOD_CODES, NON, RCNT, RST,
                    URI_PATH, AMsg, Content, DMsg, Endpoint, Msg, Pause, RcvP,
                    classify, gen_mid, gen_tok, mk_opts, ms, ms_add, ms_remove,
                    opt_value, opts_with, opts_without, rmap_del, rmap_get,
                    rmap_set)


class Semantics(NamedTuple):
    """Choices the protocol description leaves open.

    rsp_expiry: how time acts on the sent-response cache.
        "sd"    delay becomes |d - elapsed|
        "keep"  delay becomes d - elapsed, except that an entry shorter than
                the elapsed time keeps its delay
        "monus" delay becomes max(0, d - elapsed)
        "remove" delay becomes d - elapsed and entries reaching 0 are dropped
    rsp_mte: sent-response lifetimes bound the time step.
    dup_reply: answer to a duplicate confirmable request, "resend" the cached
        response or send an empty "ack".
    rsp_match_src: a response only clears pending requests sent to its source.
    app_on_dup: run application rules on duplicate requests too.
    """
    rsp_expiry: str = "keep"
    dup_reply: str = "resend"
    rsp_match_src: bool = True
    app_on_dup: bool = False
    rsp_mte: bool = False


SEM = Semantics()


@contextlib.contextmanager
def semantics(**changes):
    """Temporarily change the open protocol choices."""
    global SEM
    saved = SEM
    SEM = SEM._replace(**changes)
    try:
        yield SEM
    finally:
        SEM = saved


def backoff(ack_timeout: int, n: int) -> int:
    return ack_timeout * 2 ** n


def strip_rcnt(msg: Msg) -> Msg:
    c = msg.payload
    return Msg(msg.tgt, msg.src, c._replace(opts=opts_without(c.opts, RCNT)))


# -- sending ---------------------------------------------------------------

def amsg_to_msg(ep: Endpoint, amsg: AMsg) -> Msg:
    prefix = f"{ep.eid}-{amsg.appid}"
    content = Content(amsg.mtype, METHOD_CODES[amsg.meth], gen_mid(prefix, ep.ctr),
                      gen_tok(prefix, ep.ctr + 1), mk_opts(**{URI_PATH: amsg.path}),
                      amsg.body)
    return Msg(amsg.tgt, ep.eid, content)


def can_send(ep: Endpoint) -> bool:
    return (bool(ep.send_reqs) and isinstance(ep.send_reqs[0], AMsg)
            and len(ep.w4ack) <= ep.config.w4ack_bd and ep.snd_ctr == 0)


def devsend(ep: Endpoint):
    """Send the head application message.  Returns (endpoint, outgoing DMsg)."""
    amsg = ep.send_reqs[0]
    msg = amsg_to_msg(ep, amsg)
    cfg = ep.config
    w4ack, w4rsp = ep.w4ack, ep.w4rsp
    if amsg.mtype == CON:
        c = msg.payload
        pending = Msg(msg.tgt, msg.src, c._replace(opts=opts_with(c.opts, RCNT, 0)))
        w4ack = ms_add(w4ack, DMsg(pending, cfg.ack_timeout))
    else:
        w4rsp = ms_add(w4rsp, msg)
    ep = ep._replace(send_reqs=ep.send_reqs[1:], w4ack=w4ack, w4rsp=w4rsp,
                     ctr=ep.ctr + 2, snd_ctr=cfg.msg_qd)
    return ep, DMsg(msg, cfg.msg_sd)


def ack_timeouts(ep: Endpoint):
    """All retransmissions due now.  Yields (endpoint, outgoing DMsg)."""
    cfg = ep.config
    seen = set()
    for entry in ep.w4ack:
        if entry.delay != 0 or entry in seen:
            continue
        seen.add(entry)
        w4ack = ms_remove(ep.w4ack, entry)
        n = opt_value(entry.msg.payload.opts, RCNT, 0)
        if n < cfg.max_retransmit:
            c = entry.msg.payload
            again = Msg(entry.msg.tgt, entry.msg.src, c._replace(opts=opts_with(c.opts, RCNT, n + 1)))
            w4ack = ms_add(w4ack, DMsg(again, backoff(cfg.ack_timeout, n + 1)))
        yield ep._replace(w4ack=w4ack), DMsg(strip_rcnt(entry.msg), cfg.msg_sd)


# -- receiving -------------------------------------------------------------

class Received(NamedTuple):
    ep: Endpoint
    out: tuple                # DMsgs to send
    log: tuple                # log entries
    fresh: bool               # accepted by the protocol layer, not a duplicate


def rcv_msg(ep: Endpoint, msg: Msg) -> Received:
    kind = classify(msg)
    if kind.kind == "Request":
        return rcv_request(ep, msg, kind.method)
    if kind.kind == "Response":
        return rcv_response(ep, msg)
    if kind.kind == "Empty":
        return rcv_empty(ep, msg)
    if msg.payload.mtype == CON:
        return Received(ep, (DMsg(reply_empty(msg, RST), ep.config.msg_sd),), (), False)
    return Received(ep, (), (), False)


def reply_empty(msg: Msg, mtype: str) -> Msg:
    c = msg.payload
    return Msg(msg.src, msg.tgt, Content(mtype, EMPTY_CODE, c.mid, "", (), ""))


def matching_rsp(ep: Endpoint, msg: Msg):
    """Cached response for a duplicate of msg, if any."""
    tok = msg.payload.tok
    for entry in ep.rsp_sntd:
        if entry.msg.tgt == msg.src and entry.msg.payload.tok == tok and entry.delay > 0:
            return entry
    return None


def rcv_request(ep: Endpoint, msg: Msg, method: str) -> Received:
    c = msg.payload
    cfg = ep.config
    prior = matching_rsp(ep, msg)
    if prior is not None:
        out = ()
        if c.mtype == CON:
            if SEM.dup_reply == "resend":
                out = (DMsg(prior.msg, cfg.msg_sd),)
            else:
                out = (DMsg(reply_empty(msg, ACK), cfg.msg_sd),)
        return Received(ep, out, (), False)

    path = opt_value(c.opts, URI_PATH)
    rsrcs = ep.rsrcs
    log = ()
    body = ""
    if method == "GET":
        val = rmap_get(rsrcs, path)
        code, body = ("2.05", val) if val is not None else ("4.04", "")
    elif method == "PUT":
        code = "2.04" if rmap_get(rsrcs, path) is not None else "2.01"
        rsrcs = rmap_set(rsrcs, path, c.body)
        log = (RcvP(ep.eid, path, c.body),)
    elif method == "DELETE":
        code = "2.02"
        rsrcs = rmap_del(rsrcs, path)
    else:
        code = "4.05"
    rtype = ACK if c.mtype == CON else NON
    rsp = Msg(msg.src, ep.eid, Content(rtype, code, gen_mid(ep.eid, ep.ctr), c.tok, (), body))
    ep = ep._replace(rsrcs=rsrcs, ctr=ep.ctr + 1,
                     rsp_sntd=ms_add(ep.rsp_sntd, DMsg(rsp, cfg.ttl)))
    return Received(ep, (DMsg(rsp, cfg.msg_sd),), log, True)


def _is_request_for(rsp: Msg, req: Msg) -> bool:
    if req.payload.tok != rsp.payload.tok:
        return False
    return not SEM.rsp_match_src or req.tgt == rsp.src


def find_rsp_rcd(ep: Endpoint, src: str, tok: str) -> bool:
    return any(r.src == src and r.payload.tok == tok for r in ep.rsp_rcd)


def rcv_response(ep: Endpoint, msg: Msg) -> Received:
    c = msg.payload
    cfg = ep.config
    seen = find_rsp_rcd(ep, msg.src, c.tok)
    if c.mtype == ACK:
        w4ack = tuple(d for d in ep.w4ack if not _is_request_for(msg, d.msg))
        w4rsp = tuple(m for m in ep.w4rsp if not _is_request_for(msg, m))
        rsp_rcd = ep.rsp_rcd if seen else ms_add(ep.rsp_rcd, msg)
        ep = ep._replace(w4ack=w4ack, w4rsp=w4rsp, rsp_rcd=rsp_rcd)
        return Received(ep, (), (), not seen)
    out = (DMsg(reply_empty(msg, ACK), cfg.msg_sd),) if c.mtype == CON else ()
    if seen:
        return Received(ep, out, (), False)
    w4ack = tuple(d for d in ep.w4ack if not _is_request_for(msg, d.msg))
    w4rsp = tuple(m for m in ep.w4rsp if not _is_request_for(msg, m))
    ep = ep._replace(w4ack=w4ack, w4rsp=w4rsp, rsp_rcd=ms_add(ep.rsp_rcd, msg))
    return Received(ep, out, (), True)


def rcv_empty(ep: Endpoint, msg: Msg) -> Received:
    c = msg.payload
    if c.mtype == ACK:
        hits = [d for d in ep.w4ack if d.msg.payload.mid == c.mid and d.msg.tgt == msg.src]
        if not hits:
            return Received(ep, (), (), False)
        entry = hits[0]
        ep = ep._replace(w4ack=ms_remove(ep.w4ack, entry),
                         w4rsp=ms_add(ep.w4rsp, strip_rcnt(entry.msg)))
        return Received(ep, (), (), True)
    # RST
    if c.mtype == CON:
        return Received(ep, (DMsg(reply_empty(msg, ACK), ep.config.msg_sd),), (), False)
    return Received(ep, (), (), False)


# -- time ----------------------------------------------------------------

def endpoint_mte(ep: Endpoint):
    t = INF
    for d in ep.w4ack:
        t = min(t, d.delay)
    if ep.send_reqs:
        head = ep.send_reqs[0]
        if isinstance(head, Pause):
            t = min(t, head.duration)
        elif len(ep.w4ack) <= ep.config.w4ack_bd:
            t = min(t, ep.snd_ctr)
    if SEM.rsp_mte:
        for d in ep.rsp_sntd:
            if d.delay > 0:
                t = min(t, d.delay)
    return t


def _expire(d: int, nz: int):
    mode = SEM.rsp_expiry
    if mode == "remove":
        return d - nz
    if mode == "sd":
        return abs(d - nz)
    if mode == "keep":
        return d if d < nz else d - nz
    return max(0, d - nz)


def endpoint_pass_time(ep: Endpoint, nz: int) -> Endpoint:
    send_reqs = ep.send_reqs
    if send_reqs and isinstance(send_reqs[0], Pause):
        left = send_reqs[0].duration - nz
        send_reqs = send_reqs[1:] if left <= 0 else (Pause(left),) + send_reqs[1:]
    return ep._replace(
        send_reqs=send_reqs,
        w4ack=ms(DMsg(d.msg, max(0, d.delay - nz), d.anytime) for d in ep.w4ack),
        rsp_sntd=ms(DMsg(d.msg, _expire(d.delay, nz), d.anytime) for d in ep.rsp_sntd
                    if SEM.rsp_expiry != "remove" or d.delay > nz),
        snd_ctr=max(0, ep.snd_ctr - nz))


def dmsg_mte(d: DMsg):
    if d.anytime and d.delay == 0:
        return INF
    return d.delay


def dmsg_pass_time(d: DMsg, nz: int) -> DMsg:
    return DMsg(d.msg, max(0, d.delay - nz), d.anytime)
