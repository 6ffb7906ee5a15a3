from hypothesis import given, settings
from hypothesis import strategies as st

from coapdialect import props as P
from coapdialect.attack import delay, drop, mc
from coapdialect.dialect import UD, D, apply_dialect, decode_dialect, wrap
from coapdialect.model import (CON, NON, URI_PATH, Content, DContent, DMsg, Endpoint,
                               Msg, mk_opts, rb)
from coapdialect.scenarios import experiments, mk_get_n, mk_put_c, mk_put_n, tcs
from coapdialect.search import FINAL, search
from projections import resources, terminal_projection

names = st.sampled_from(["door", "sig", "gate", "arm", "grip"])
values = st.text(alphabet="abcdefghijklmnop", min_size=0, max_size=6)


@st.composite
def contents(draw):
    mtype = draw(st.sampled_from([CON, NON]))
    code = draw(st.sampled_from(["0.01", "0.03", "2.04", "2.05", "4.04"]))
    n = draw(st.integers(0, 50))
    return Content(mtype, code, f"dev0-a-m{n}", f"dev0-a-t{n + 1}",
                   mk_opts(**{URI_PATH: draw(names)}), draw(values))


class TestCodecLaws:
    @settings(max_examples=10_000, deadline=None)
    @given(contents(), st.integers(0, 40), st.sampled_from(["dev1", "dev2"]))
    def test_round_trip_tamper_single_use(self, c, sends, peer):
        peers = ["dev0", "dev1", "dev2"]
        w0 = wrap(Endpoint("dev0"), peers)
        w0 = w0._replace(ix_ctr=tuple((p, sends) for p, _ in w0.ix_ctr))
        receiver = wrap(Endpoint(peer), peers)
        w0, out = apply_dialect(w0, DMsg(Msg(peer, "dev0", c), 2))
        sealed = out.msg
        assert sealed.payload.ix == sends
        # round trip
        opened, plain = decode_dialect(receiver, sealed)
        assert plain == Msg(peer, "dev0", c)
        # single use
        assert decode_dialect(opened, sealed)[1] is None
        # tampered index
        bumped = Msg(peer, "dev0", DContent(sealed.payload.bits, sealed.payload.ix + 1))
        assert decode_dialect(receiver, bumped)[1] is None
        # wrong receiver
        other = "dev2" if peer == "dev1" else "dev1"
        stranger = wrap(Endpoint(other), peers)
        assert decode_dialect(stranger, Msg(other, "dev0", sealed.payload))[1] is None
        # wrong claimed source
        assert decode_dialect(receiver, Msg(peer, other, sealed.payload))[1] is None


@st.composite
def client_messages(draw):
    make = draw(st.sampled_from(["putC", "putN", "getN"]))
    path = draw(names)
    if make == "getN":
        return mk_get_n("getN", "dev1", path)
    ctor = mk_put_c if make == "putC" else mk_put_n
    return ctor(make, "dev1", path, draw(values))


small_caps = st.lists(st.sampled_from([drop(), delay(5), delay(10)]), max_size=2)


@st.composite
def small_systems(draw):
    amsgl = tuple(draw(st.lists(client_messages(), min_size=1, max_size=2)))
    return tcs(amsgl, rb("door", "lock", "sig", "off"), draw(small_caps))


class TestTransforms:
    def test_inverse_on_every_scenario(self):
        seen = set()
        for e in experiments():
            if e.scenario in seen:
                continue
            seen.add(e.scenario)
            sys = e.build()
            assert UD(D(sys)) == sys, e.scenario

    @given(small_systems())
    def test_inverse_generated(self, sys):
        assert UD(D(sys)) == sys


class TestTimeInvariants:
    @settings(max_examples=40, deadline=None)
    @given(small_systems(), st.booleans())
    def test_trichotomy(self, sys, dialected):
        search(sys, P.TRUE, FINAL, dialected=dialected, debug_invariants=True)


def logs_of_final(sys, **kw):
    r = search(sys, P.TRUE, FINAL, **kw)
    return [r.state(k).log for k in range(r.count)], r


class TestAtMostOnce:
    @settings(max_examples=30, deadline=None)
    @given(names, values)
    def test_lost_ack_single_processing(self, path, val):
        # the attacker drops one reply from the server, forcing a retransmission
        sys = tcs((mk_put_c("putC", "dev1", path, val),), rb("door", "lock"),
                  [mc("dev0", "dev1", True)])
        logs, r = logs_of_final(sys, require_caps_exhausted=True)
        assert logs
        for lg in logs:
            assert len(lg) == 1
        retransmitted = [k for k in range(r.count)
                         if sum(lab.startswith("ackTimeout") for lab in r.trace(k)) > 0
                         and sum(lab.startswith("rcv dev1") for lab in r.trace(k)) == 2]
        assert retransmitted


class TestBisimulation:
    @settings(max_examples=25, deadline=None)
    @given(small_systems())
    def test_drop_delay_generated(self, sys):
        plain, dial = terminal_projection(sys, False), terminal_projection(sys, True)
        assert plain == dial
        assert resources(plain) == resources(dial)
