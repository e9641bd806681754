"""Service endpoints: verdict envelopes, exact payloads, 422 mapping."""
import pytest
from fastapi.testclient import TestClient

from voaforge.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


class TestRealization:
    def test_verified_pass(self, client):
        r = client.post("/realization", json={"name": "wakimoto", "p": 2})
        body = r.json()
        assert r.status_code == 200
        assert body["status"] == "pass" and body["ok"]
        assert body["report"]["measured"] == {"k": "-3/2", "c": "-9"}
        assert all(rel["ok"] for rel in body["report"]["relations"])

    def test_fields_mode(self, client):
        r = client.post("/realization",
                        json={"name": "wakimoto", "p": 1, "verify": False})
        rep = r.json()["report"]
        assert sorted(rep["fields"]) == ["L", "e", "f", "h"]
        assert rep["fields"]["e"] == "e^{u+v}"
        assert rep["expect"] == {"k": "-1", "c": "-3"}

    def test_unknown_name_is_422(self, client):
        r = client.post("/realization", json={"name": "zzz"})
        assert r.status_code == 422
        assert "unknown realization" in r.json()["detail"]

    def test_bad_p_is_422(self, client):
        r = client.post("/realization", json={"name": "wakimoto", "p": 0})
        assert r.status_code == 422


class TestOpe:
    def test_lattice_pair(self, client):
        r = client.post("/ope", json={"space": "uva", "p": 1,
                                      "left": "e^{u}", "right": "e^{-u}"})
        assert r.json()["report"]["poles"] == [
            {"pole": 1, "state": "e^{0}"}]

    def test_mode_with_momentum(self, client):
        r = client.post("/ope", json={"space": "uva", "p": 1,
                                      "left": "u[-1] e^{0}",
                                      "right": "e^{u}"})
        assert r.json()["report"]["poles"] == [
            {"pole": 1, "state": "e^{u}"}]

    def test_regular_product_has_no_poles(self, client):
        # <u+v, -(u+v)> = 0 in the (1,-1) block: no singular part
        r = client.post("/ope", json={"space": "uva", "p": 1,
                                      "left": "e^{u+v}",
                                      "right": "e^{-u-v}"})
        assert r.json()["report"]["poles"] == []

    def test_parse_error_carries_position(self, client):
        r = client.post("/ope", json={"space": "uva", "p": 1,
                                      "left": "e^{u+w}", "right": "e^{0}"})
        assert r.status_code == 422
        assert "unknown generator w" in r.json()["detail"]
        assert "column" in r.json()["detail"]


class TestScreen:
    def test_kernel_member(self, client):
        r = client.post("/screen", json={"name": "qfms", "p": 2,
                                         "state": "e^{u+v}"})
        rep = r.json()["report"]
        assert rep["in_kernel"] is True and rep["output"] == "0"

    def test_non_member(self, client):
        r = client.post("/screen", json={"name": "qfms", "p": 1,
                                         "state": "e^{-2*u}"})
        rep = r.json()["report"]
        assert rep["in_kernel"] is False
        assert rep["output"] == "u[-1] e^{-u}"

    def test_unknown_screening(self, client):
        r = client.post("/screen", json={"name": "zzz", "p": 1,
                                         "state": "e^{0}"})
        assert r.status_code == 422


class TestKernel:
    def test_standard_call(self, client):
        r = client.post("/kernel", json={
            "p": 2, "module": "Pi0 x V(sqrt2 A1)",
            "screenings": "Qminus,QFMS", "max_conf": 2, "window": "-4:4"})
        body = r.json()
        assert body["status"] == "pass"
        assert body["report"]["module"] == "Pi0 x V(sqrt2 A1)"
        assert body["report"]["screens"] == ["qfms", "qminus"]

    def test_wrong_screening_pair(self, client):
        r = client.post("/kernel", json={"p": 2, "screenings": "Qplus"})
        assert r.status_code == 422
        assert "qfms,qminus" in r.json()["detail"]

    def test_wrong_module_label(self, client):
        r = client.post("/kernel", json={"p": 2, "module": "zzz"})
        assert r.status_code == 422

    def test_bad_window(self, client):
        r = client.post("/kernel", json={"p": 2, "window": "6"})
        assert r.status_code == 422


class TestOmega:
    def test_bracket_with_classification(self, client):
        r = client.post("/omega", json={"p": 2, "r": 1, "s": 1, "b": "0",
                                        "window": "-5:5", "classify": True})
        body = r.json()
        assert body["status"] == "pass"
        assert body["report"]["classification"]["case"] == "chain-2"

    def test_sweep(self, client):
        r = client.post("/omega", json={"sweep": True, "pmax": 2})
        body = r.json()
        assert body["status"] == "pass"
        assert body["report"]["count"] == 36

    def test_fractional_point(self, client):
        r = client.post("/omega", json={"p": 1, "r": 1, "s": 2, "b": "1/7"})
        assert r.json()["status"] == "pass"

    def test_bad_b(self, client):
        r = client.post("/omega", json={"b": "x"})
        assert r.status_code == 422


class TestChar:
    def test_simple_by_rs(self, client):
        r = client.post("/char", json={"kind": "simple", "p": 2, "r": 1,
                                       "s": 1, "order": 3, "window": "-6:6"})
        terms = r.json()["report"]["series"]["terms"]
        assert terms[0] == {"q": "0", "z": "0", "c": "1"}
        assert all(t["c"].lstrip("-").isdigit() for t in terms)

    def test_window_clips_z(self, client):
        r = client.post("/char", json={"kind": "weyl", "p": 2, "n": 1,
                                       "order": 3, "window": "-1:1"})
        zs = {t["z"] for t in r.json()["report"]["series"]["terms"]}
        assert zs <= {"-1", "1"}

    def test_m_series_with_negative_n(self, client):
        r = client.post("/char", json={"kind": "m", "p": 1, "n": -1,
                                       "order": 3, "window": "0:0"})
        assert r.json()["report"]["series"]["terms"] == [
            {"q": "1", "z": "0", "c": "1"},
            {"q": "2", "z": "0", "c": "1"}]

    def test_needs_r1_without_n(self, client):
        r = client.post("/char", json={"kind": "simple", "p": 2, "r": 2})
        assert r.status_code == 422

    def test_unknown_kind(self, client):
        r = client.post("/char", json={"kind": "zzz"})
        assert r.status_code == 422


class TestCheck:
    @pytest.mark.parametrize("identity,p", [("weyl-simple", 2),
                                            ("x-decomposition", 2),
                                            ("p1-decomposition", 1)])
    def test_identities_pass(self, client, identity, p):
        r = client.post("/check", json={"identity": identity, "p": p,
                                        "order": 3})
        assert r.json()["status"] == "pass"

    def test_p1_identity_needs_p1(self, client):
        r = client.post("/check", json={"identity": "p1-decomposition",
                                        "p": 2})
        assert r.status_code == 422

    def test_unknown_identity(self, client):
        r = client.post("/check", json={"identity": "zzz"})
        assert r.status_code == 422


class TestC2:
    @pytest.mark.parametrize("check", ["ideal-equality", "casimir",
                                       "nilpotency"])
    def test_checks_pass(self, client, check):
        r = client.post("/c2", json={"p": 2, "check": check})
        body = r.json()
        assert body["status"] == "pass"
        assert body["report"]["check"] == check

    def test_unknown_check(self, client):
        r = client.post("/c2", json={"p": 2, "check": "zzz"})
        assert r.status_code == 422


class TestQGroup:
    def test_relations_pass(self, client):
        r = client.post("/qgroup", json={"variant": "a", "p": 3})
        assert r.json()["status"] == "pass"

    def test_tiny_budget_is_inconclusive_not_fail(self, client):
        r = client.post("/qgroup", json={"variant": "a", "p": 3,
                                         "check": "fg-inverse",
                                         "max_steps": 3})
        body = r.json()
        assert body["status"] == "inconclusive"
        assert body["ok"] is False and body["inconclusive"] is True

    def test_degenerate_variant(self, client):
        r = client.post("/qgroup", json={"variant": "a", "p": 1})
        assert r.status_code == 422


class TestSuite:
    def test_quick_pass(self, client):
        r = client.post("/suite", json={"profile": "quick"})
        body = r.json()
        assert body["status"] == "pass"
        assert len(body["report"]["results"]) == 10

    def test_fault_injection_fails_and_names_wakimoto(self, client):
        r = client.post("/suite", json={"profile": "quick",
                                        "fault": "cocycle-sign"})
        body = r.json()
        assert body["status"] == "fail"
        first = body["report"]["results"][0]
        assert first["name"] == "wakimoto-closure" and not first["ok"]

    def test_unknown_fault(self, client):
        r = client.post("/suite", json={"profile": "quick", "fault": "zzz"})
        assert r.status_code == 422


def test_reports_carry_no_floats(client):
    """Every number in a verdict payload is an int or an exact string."""
    def walk(x):
        assert not isinstance(x, float), x
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)

    for path, payload in (
            ("/realization", {"name": "fms", "p": 2}),
            ("/char", {"kind": "lplus", "p": 2, "r": 1, "s": 2, "order": 3}),
            ("/c2", {"p": 1, "check": "ideal-equality"}),
            ("/omega", {"p": 1, "b": "1/7"}),
    ):
        body = client.post(path, json=payload).json()
        walk(body["report"])
