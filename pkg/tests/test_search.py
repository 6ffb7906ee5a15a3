import pytest

from coapdialect import props as P
from coapdialect.model import RcvP
from coapdialect.props import rcvp
from coapdialect.scenarios import (br_init, ca_fig12, ca_fig3, isys0, isys2, isys3a, isys3r,
                                   parse_call, ra_r1)
from coapdialect.search import (FINAL, PLUS, StateCapExceeded, rewrite, search, transitions)

NEVER = P.Prop(lambda s: False, "false")


def reachable_oracle(initial):
    """Depth-first enumeration: every reachable state and the terminal ones."""
    seen = {initial}
    stack = [initial]
    terminal = set()
    while stack:
        s = stack.pop()
        succs = transitions(s)
        if not succs:
            terminal.add(s)
        for _, t in succs:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen, terminal


SMALL = ["iSys0", "iSys1", "iSys3a", "caFig1.2(5,0)", "raR1(5,0,10,false)", "caFig7mod(5,0)"]


class TestAgainstOracle:
    @pytest.mark.parametrize("call", SMALL)
    def test_reachable_count(self, call):
        sys = parse_call(call)
        seen, _ = reachable_oracle(sys)
        assert search(sys, NEVER, PLUS).visited == len(seen)

    @pytest.mark.parametrize("call", SMALL)
    def test_terminal_count(self, call):
        sys = parse_call(call)
        _, terminal = reachable_oracle(sys)
        r = search(sys, P.TRUE, FINAL)
        assert {r.state(k) for k in range(r.count)} == terminal

    @pytest.mark.parametrize("call", SMALL)
    def test_dialected_reachable_count(self, call):
        from coapdialect.dialect import D
        sys = parse_call(call)
        seen, _ = reachable_oracle(D(sys))
        assert search(sys, NEVER, PLUS, dialected=True).visited == len(seen)


class TestTransitions:
    def test_terminal(self):
        final = rewrite(isys0())
        assert transitions(final) == []

    def test_fresh_single_devsend(self):
        assert len(transitions(isys0())) == 1

    def test_no_duplicate_successors(self):
        sys = parse_call("iSysX(3,0,caps-2)")
        for _ in range(6):
            succs = [s for _, s in transitions(sys)]
            assert len(succs) == len(set(succs))
            sys = succs[-1]


class TestRewrite:
    def test_isys0_locks(self):
        final = rewrite(isys0())
        assert P.check_rsrc("dev1", "door", "lock")(final)
        assert final.log == (RcvP("dev1", "door", "unlock"), RcvP("dev1", "sig", "go"),
                             RcvP("dev1", "door", "lock"))

    def test_zero(self):
        assert rewrite(isys0(), 0) == isys0()

    def test_bridge_idle(self):
        assert P.has_av("bctl", "status", "idle")(rewrite(br_init()))


class TestSearch:
    def test_isys2(self):
        goal = P.sub_lil(rcvp("dev1", "door", "lock"), rcvp("dev1", "door", "unlock"))
        r = search(isys2(), goal)
        assert r.count == 2
        unlock_go_lock_unlock = tuple(RcvP("dev1", p, v) for p, v in
                                      [("door", "unlock"), ("sig", "go"), ("door", "lock"),
                                       ("door", "unlock")])
        assert r.state(1).log == unlock_go_lock_unlock

    def test_isys3r(self):
        goal = P.all_of(P.check_rsrc("dev1", "door", "unlock"),
                        P.has_get_rsp("dev0", "dev1", "getN", "lock"))
        r = search(isys3r(), goal)
        assert (r.count, r.visited) == (4, 109)

    def test_isys3a(self):
        goal = P.all_of(P.check_rsrc("dev1", "door", "unlock"),
                        P.has_get_rsp("dev0", "dev1", "getN", "lock"))
        r = search(isys3a(), goal)
        assert (r.count, r.visited) == (4, 33)

    def test_dialected_raR1(self):
        r = search(ra_r1(5, 0, 10, False), P.check_rsrc("dev1", "door", "lock"), dialected=True)
        assert r.count == 0

    def test_plus_excludes_initial(self):
        r = search(isys0(), P.TRUE, PLUS)
        assert r.count == r.total - 1
        assert all(len(r.trace(k)) > 0 for k in range(r.count))

    def test_bound(self):
        assert search(isys0(), P.TRUE, PLUS, bound=3).count == 3

    def test_caps_exhausted(self):
        all_final = search(ca_fig12(5, 0), P.TRUE).count
        spent = search(ca_fig12(5, 0), P.TRUE, require_caps_exhausted=True).count
        assert 0 < spent < all_final

    def test_trace_replays(self):
        r = search(isys2(), P.sub_lil(rcvp("dev1", "door", "lock"), rcvp("dev1", "door", "unlock")))
        for k in range(r.count):
            sys = isys2()
            for label in r.trace(k):
                sys = dict((lab, s) for lab, s in reversed(transitions(sys)))[label]
            assert sys == r.state(k)

    def test_state_cap(self):
        with pytest.raises(StateCapExceeded) as info:
            search(ca_fig3(15, 5, 0), P.TRUE, max_states=50)
        assert not info.value.result.complete

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            search(isys0(), P.TRUE, "sometimes")

    def test_debug_invariants(self):
        r = search(ca_fig3(15, 5, 0), P.TRUE, debug_invariants=True)
        assert r.count > 0

    def test_reactive_witness_logs(self):
        x2 = parse_call("iSysX(3,0,caps-2)")
        order = P.sub_lil(rcvp("dev1", "sig", "on"), rcvp("dev2", "sig", "on"), rcvp("dev1", "sig", "off"))
        r = search(x2, order, PLUS)
        logs = {r.state(k).log for k in range(r.count)}
        printed = tuple(RcvP(d, "sig", v) for d, v in
                        [("dev3", "on"), ("dev1", "on"), ("dev2", "on"), ("dev1", "off"),
                         ("dev2", "on"), ("dev2", "off"), ("dev3", "on"), ("dev3", "off")])
        assert printed in logs
        assert r.state(r.count - 1).log[-1] == RcvP("dev3", "sig", "off")
