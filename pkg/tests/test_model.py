from coapdialect.model import (ACK, CON, NON, Content, DCBits, DContent, DMsg, Endpoint,
                               Msg, System, URI_PATH, canonicalize, classify, gen_mid,
                               gen_tok, get_path, get_src, get_tgt, get_type, mk_opts,
                               mk_system, ms, rb, tok_matches)
from coapdialect.scenarios import experiments


def put_msg(mid="dev0-m0", tok="dev0-putN-t1", mtype=CON, path="door", body="lock"):
    return Msg("dev1", "dev0", Content(mtype, "0.03", mid, tok, mk_opts(**{URI_PATH: path}), body))


class TestSelectors:
    def test_type(self):
        assert get_type(put_msg()) == "CON"

    def test_path(self):
        assert get_path(put_msg(path="door")) == "door"

    def test_dialected_tgt(self):
        sealed = Msg("dev1", "dev0", DContent(DCBits("g", 0, put_msg().payload), 0))
        assert get_tgt(sealed) == "dev1"
        assert get_src(sealed) == "dev0"


class TestClassify:
    def test_put_request(self):
        c = classify(put_msg())
        assert c.kind == "Request" and c.method == "PUT"

    def test_success_response(self):
        m = Msg("dev0", "dev1", Content(ACK, "2.05", "dev1-m0", "t", (), "lock"))
        assert classify(m).kind == "Response" and classify(m).success is True

    def test_not_found_response(self):
        m = Msg("dev0", "dev1", Content(NON, "4.04", "dev1-m0", "t", (), ""))
        assert classify(m).success is False

    def test_empty_ack(self):
        m = Msg("dev0", "dev1", Content(ACK, "", "dev0-m0", "", (), ""))
        assert classify(m).kind == "Empty"


class TestIdentifiers:
    def test_mids_differ_by_counter(self):
        assert gen_mid("dev0-putC", 0) != gen_mid("dev0-putC", 2)

    def test_mid_and_token_namespaces(self):
        assert gen_mid("dev1", 4) != gen_tok("dev1", 4)

    def test_token_embeds_app_id(self):
        # every request app id used by a registered experiment is recoverable from its token
        ids = set()
        for e in experiments():
            for a in e.build().agents:
                for amsg in getattr(a, "send_reqs", ()):
                    if hasattr(amsg, "appid"):
                        ids.add(amsg.appid)
        assert ids
        for aid in ids:
            tok = gen_tok(f"dev0-{aid}", 1)
            assert aid in tok
            assert tok_matches(tok, aid)

    def test_empty_app_id_matches_any(self):
        assert tok_matches("dev0-putN-t1", "")

    def test_prefix_app_id_does_not_match(self):
        assert not tok_matches("dev0-putNDL-t1", "putN")


class TestCanonicalForm:
    def test_net_order(self):
        a = DMsg(put_msg(mid="a"), 2)
        b = DMsg(put_msg(mid="b"), 2)
        ep = Endpoint("dev0")
        assert mk_system([ep], nin=[a, b]) == mk_system([ep], nin=[b, a])

    def test_agent_order(self):
        x, y = Endpoint("dev0"), Endpoint("dev1")
        assert mk_system([x, y]) == mk_system([y, x])

    def test_ctr_is_state(self):
        assert mk_system([Endpoint("dev0", ctr=1)]) != mk_system([Endpoint("dev0", ctr=2)])

    def test_canonicalize_sorts_hand_built(self):
        ep = Endpoint("dev1", rsrcs=(("sig", "off"), ("door", "lock")))
        hand = System((ep,))
        assert canonicalize(hand).agents[0].rsrcs == rb("door", "lock", "sig", "off")

    def test_ms_sorted(self):
        assert ms([3, 1, 2]) == (1, 2, 3)
