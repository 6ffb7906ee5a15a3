from coapdialect.attack import (MC, MCX, Act, act, apply_mc, attack_transitions, delay, drop,
                                mc, mk_attacker, replay)
from coapdialect.model import (ACK, NON, URI_PATH, Attacker, Content, DMsg, Endpoint, Msg,
                               mk_opts, mk_system, rb)
from coapdialect.scenarios import br_init, isys1
from coapdialect.search import rewrite, transitions


def put(tgt="dev1", src="dev0", body="lock", path="door", code="0.03"):
    return Msg(tgt, src, Content(NON, code, "dev0-putN-m0", "dev0-putN-t1",
                                 mk_opts(**{URI_PATH: path}), body))


class TestConstructors:
    def test_drop(self):
        assert drop() == MC("", "", True, ())

    def test_replay(self):
        assert replay(10) == MC("", "", False, (Act("", "", 10),))

    def test_delay(self):
        assert delay(5) == MC("", "", True, (Act("", "", 5),))

    def test_attacker(self):
        a = mk_attacker("eve", [drop()])
        assert a == Attacker("eve", (), (drop(),))


class TestApply:
    def test_drop(self):
        assert apply_mc(drop(), DMsg(put(), 2)) == []

    def test_replay(self):
        assert sorted(apply_mc(replay(10), DMsg(put(), 2))) == [DMsg(put(), 2), DMsg(put(), 12)]

    def test_redirect(self):
        cap = mc("dev1", "dev0", True, act("dev2", "dev0", 0))
        assert apply_mc(cap, DMsg(put(), 2)) == [DMsg(put(tgt="dev2"), 2)]

    def test_no_acts(self):
        assert apply_mc(mc("", "", True), DMsg(put(), 2)) == []

    def test_pure_delay(self):
        assert apply_mc(mc("", "", True, act("", "", 5)), DMsg(put(), 2)) == [DMsg(put(), 7)]

    def test_two_copies(self):
        cap = mc("dev1", "dev0", True, act("dev2", "", 0), act("dev3", "", 0))
        out = apply_mc(cap, DMsg(put(), 2))
        assert sorted(d.msg.tgt for d in out) == ["dev2", "dev3"]


def with_attacker(caps, *nin):
    return mk_system([Endpoint("dev0"), Endpoint("dev1", rsrcs=rb("door", "unlock")),
                      Endpoint("dev2", rsrcs=rb("door", "lock")), mk_attacker("eve", caps)],
                     nin=nin)


class TestAttackRule:
    def test_drop_removes_and_remembers(self):
        sys = with_attacker([drop()], DMsg(put(), 2))
        ((_, succ),) = list(attack_transitions(sys))
        assert succ.nin == () and succ.nout == ()
        eve = succ.agent("eve")
        assert eve.kb == (DMsg(put(), 2),) and eve.caps == ()

    def test_isys1_lock_request_dropped(self):
        sys = isys1()
        while not sys.nin:
            sys = transitions(sys)[0][1]
        (_, succ), = [t for t in transitions(sys) if t[0].startswith("attack")]
        assert succ.nin == () and succ.nout == ()

    def test_no_caps(self):
        assert list(attack_transitions(with_attacker([], DMsg(put(), 2)))) == []

    def test_reactive_keeps_original(self):
        sys = with_attacker([mc("dev1", "dev0", False, act("dev2", "", 0))], DMsg(put(), 2))
        ((_, succ),) = list(attack_transitions(sys))
        assert sorted(d.msg.tgt for d in succ.nout) == ["dev1", "dev2"]

    def test_pattern_mismatch(self):
        sys = with_attacker([mc("dev9", "", True)], DMsg(put(), 2))
        assert list(attack_transitions(sys)) == []


class TestMCX:
    def test_copies_to_every_holder(self):
        sys = with_attacker([MCX(20)], DMsg(put(), 2))
        succs = [s for _, s in attack_transitions(sys)]
        copies = [d for s in succs for d in s.nout if d.anytime]
        assert sorted(d.msg.tgt for d in copies) == ["dev1", "dev2"]
        assert all(d.delay == 22 for d in copies)
        assert all(DMsg(put(), 2) in s.nout for s in succs)

    def test_bridge_gate_close(self):
        sys = br_init([MCX(20)])
        while not any(d.msg.payload.opts and dict(d.msg.payload.opts).get(URI_PATH) == "gate"
                      for d in sys.nin):
            untimed = [s for lab, s in transitions(sys)
                       if not lab.startswith(("tick", "attack", "mcX"))]
            sys = untimed[0] if untimed else transitions(sys)[0][1]
        copies = [lab for lab, _ in attack_transitions(sys) if "->ga" in lab]
        assert copies == ["mcX eve 20 bctl->ga copy to ga"]

    def test_ack_ignored(self):
        ack = Msg("dev0", "dev1", Content(ACK, "", "m", "", (), ""))
        assert list(attack_transitions(with_attacker([MCX(0)], DMsg(ack, 2)))) == []

    def test_zero_delay_copy_is_anytime(self):
        sys = with_attacker([MCX(0)], DMsg(put(), 0))
        _, succ = next(attack_transitions(sys))
        copy = next(d for d in succ.nout if d.anytime)
        assert copy.delay == 0
        # deliverable now
        assert any(lab.startswith("rcv " + copy.msg.tgt) for lab, _ in transitions(succ))

    def test_get_copy_adds_return_capability(self):
        get = put(code="0.01", body="")
        sys = with_attacker([MCX(0)], DMsg(get, 2))
        _, succ = next(t for t in attack_transitions(sys) if t[0].endswith("dev2"))
        assert succ.agent("eve").caps == (mc("dev0", "dev2", False, act("dev0", "dev1", 0)),)


class TestRewrite:
    def test_zero_steps(self):
        assert rewrite(isys1(), 0) == isys1()
