from coapdialect.applayer import (Eq, Req, Rsp, Send, Set, V, do_app, eval_cond, exec_action,
                                  match_pattern)
from coapdialect.model import (ACK, NON, URI_PATH, AConf, AMsg, Content, Endpoint, Msg, mk_opts,
                               rb, rmap_get)
from coapdialect.scenarios import br_init, init_rl
from coapdialect.search import rewrite


def boat_here(src="bs"):
    return Msg("bctl", src, Content(NON, "0.03", "bs-BoatHere-m0", "bs-BoatHere-t1",
                                    mk_opts(**{URI_PATH: "boat"}), "here"))


def controller(status="idle"):
    return Endpoint("bctl", rsrcs=rb("boat", "none"), aconf=AConf(rb("status", status), "bridge-rules"))


class TestPatterns:
    def test_request(self):
        assert match_pattern(Req("bs", "PUT", "boat", "here"), boat_here()) == {}

    def test_response_by_token(self):
        rsp = Msg("bctl", "ga", Content(NON, "2.04", "ga-m0", "bctl-GateCL-t3", (), ""))
        assert match_pattern(Rsp("ga", "GateCL", True, ""), rsp) == {}

    def test_ack_only(self):
        ack = Msg("bctl", "bs", Content(ACK, "", "bs-m0", "", (), ""))
        assert match_pattern(Req("bs", "PUT", "boat", "here"), ack) is None

    def test_binding(self):
        assert match_pattern(Req(V("src"), "PUT", "boat", "here"), boat_here("x")) == {"src": "x"}


class TestActions:
    def test_condition(self):
        assert eval_cond(Eq(V("status"), "idle"), {}, rb("status", "idle"), ())

    def test_unbound_condition_is_false(self):
        assert not eval_cond(Eq(V("nothing"), "idle"), {}, (), ())

    def test_set(self):
        ep = exec_action(Set("status", "working"), {}, controller())
        assert rmap_get(ep.aconf.akb, "status") == "working"

    def test_send(self):
        ep = exec_action(Send("GateCL", "ga", "NON", "PUT", "gate", "close"), {}, controller())
        assert ep.send_reqs == (AMsg("GateCL", "ga", "NON", "PUT", "gate", "", "close"),)


class TestDoApp:
    def test_idle_controller_closes_gate(self):
        ep = do_app(boat_here(), controller())
        assert ep.send_reqs[0].appid == "GateCL"
        assert rmap_get(ep.aconf.akb, "status") == "working"

    def test_busy_controller_ignores(self):
        assert do_app(boat_here(), controller("working")) == controller("working")

    def test_no_aconf(self):
        ep = Endpoint("bctl")
        assert do_app(boat_here(), ep) == ep


class TestRounds:
    def test_bridge_round(self):
        final = rewrite(br_init())
        assert rmap_get(final.agent("br").rsrcs, "bridge") == "close"
        assert rmap_get(final.agent("ga").rsrcs, "gate") == "open"
        assert rmap_get(final.agent("bctl").aconf.akb, "status") == "idle"

    def test_pnp_round(self):
        final = rewrite(init_rl())
        assert rmap_get(final.agent("arm").rsrcs, "arm") == "goL"
        assert rmap_get(final.agent("gr").rsrcs, "grip") == "open"
        assert rmap_get(final.agent("pctl").aconf.akb, "status") == "idle"

    def test_pnp_start_addresses_arm(self):
        sys = init_rl()
        while not any(a.eid == "pctl" and a.send_reqs for a in sys.agents):
            sys = rewrite(sys, 1)
        (amsg,) = sys.agent("pctl").send_reqs
        assert (amsg.tgt, amsg.path, amsg.body) == ("arm", "arm", "goR")
