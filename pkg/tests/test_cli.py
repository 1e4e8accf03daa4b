import json

import jsonschema
import pytest

from kottrace import __version__
from kottrace.cli import RESPONSE_SCHEMA, SCHEMAS, UsageError, dumps, main, run, run_batch

COUNT = {
    "command": "count",
    "params": {"n": 2, "s": 1, "p": 3, "alpha": 2, "ker1": 1, "terms": [{"blocks": [2], "chars": ["trivial"], "N": "1"}]},
}

VALID = [
    {"command": "satake", "params": {"n": 2, "s": 1}},
    {"command": "satake", "params": {"n": 3, "s": 1, "group": "gu"}},
    {"command": "constant-term", "params": {"n": 3, "s": 1, "blocks": [2, 1]}},
    {"command": "truncate", "params": {"n": 3, "s": 1, "blocks": [1, 1, 1]}},
    {"command": "truncate", "params": {"levi_blocks": [2, 2], "s_per_block": [1, 1], "sub_blocks": [1, 1, 1, 1]}},
    {"command": "cosets", "params": {"lambda": [1, 1], "mu": [1, 1], "theta": True}},
    {"command": "poset", "params": {"speh": [2, 2]}},
    {"command": "poset", "params": {"multisegment": [[0, 2], [-2, 0]]}},
    {"command": "poset", "params": {"factors": [{"x": 1, "y": 2}]}},
    {"command": "hecke-matrix", "params": {"blocks": [1, 1], "chars": ["trivial", "quadratic"]}},
    {"command": "trace", "params": {"n": 2, "s": 1, "blocks": [2]}},
    {"command": "trace", "params": {"n": 2, "s": 1, "blocks": [2], "p": 3, "alpha": 1}},
    COUNT,
    {"command": "check-parity", "params": {"n": 2, "s": 1, "p": 3, "k": 1, "terms": [{"blocks": [2], "N": 1}]}},
]


def result(req, **kw):
    return run(req, **kw)["result"]


class TestRun:
    def test_satake(self):
        got = result({"command": "satake", "params": {"n": 2, "s": 1}})
        assert got["num_vars"] == 2 and len(got["terms"]) == 2
        for t in got["terms"]:
            assert t["q_exponent"] == [0, 2] and t["coefficient"] == "1"

    def test_cosets(self):
        assert result(VALID[5]) == [[1, 2], [2, 1]]

    def test_count(self):
        assert result(COUNT) == "27"

    def test_count_irrational_warns(self):
        req = json.loads(json.dumps(COUNT))
        req["params"]["alpha"] = 1
        out = run(req)
        assert out["result"] == "9*sqrt(3)" and out["warnings"]

    def test_echo_and_version(self):
        out = run(COUNT)
        assert out["params"] == COUNT["params"] and out["version"] == __version__

    def test_trace_numeric(self):
        assert result(VALID[11]) == "27"

    def test_trace_alpha_parity(self):
        req = {"command": "trace", "params": {"n": 2, "s": 1, "blocks": [1, 1], "chars": ["quadratic", "quadratic"]}}
        out = run(req, alpha_parity=1)
        assert out["params"]["alpha_parity"] == "odd"
        assert all(not t["sign_parity"] for t in out["result"])

    def test_schema_error_has_path(self):
        with pytest.raises(UsageError) as exc:
            run({"command": "satake", "params": {"n": "two", "s": 1}})
        assert exc.value.path == "params['n']"

    def test_unknown_command(self):
        with pytest.raises(UsageError):
            run({"command": "frobnicate", "params": {}})

    def test_domain_error(self):
        with pytest.raises(ValueError):
            run({"command": "satake", "params": {"n": 2, "s": 5}})

    def test_every_command_has_a_schema(self):
        assert {r["command"] for r in VALID} == set(SCHEMAS)


class TestBatch:
    def test_empty(self):
        assert run_batch([]) == []

    def test_isolation(self):
        bad = {"command": "cosets", "params": {"lambda": [1, 2], "mu": [3], "theta": True}}
        out = run_batch([COUNT, bad, {"nope": 1}])
        assert out[0]["result"] == "27"
        assert out[1]["error"]["kind"] == "domain"
        assert out[2]["error"]["kind"] == "usage"

    def test_determinism(self):
        a, b = run_batch([COUNT, COUNT])
        assert dumps(a) == dumps(b)

    def test_threads_keep_order(self):
        serial = run_batch(VALID)
        parallel = run_batch(VALID, threads=4)
        assert dumps(serial) == dumps(parallel)

    def test_responses_match_schema(self):
        out = run_batch(VALID + [{"command": "satake", "params": {}}, {"command": "satake", "params": {"n": 1, "s": 3}}])
        for r in out:
            jsonschema.validate(json.loads(dumps(r)), RESPONSE_SCHEMA)


class TestMain:
    def _write(self, tmp_path, obj):
        f = tmp_path / "in.json"
        f.write_text(json.dumps(obj))
        return str(f)

    def test_count_to_file(self, tmp_path):
        out = tmp_path / "out.json"
        assert main(["count", "--input", self._write(tmp_path, COUNT["params"]), "--output", str(out)]) == 0
        assert json.loads(out.read_text())["result"] == "27"

    def test_usage_exit(self, tmp_path, capsys):
        assert main(["satake", "--input", self._write(tmp_path, {"n": "x", "s": 1})]) == 2
        assert "params['n']" in capsys.readouterr().err

    def test_domain_exit(self, tmp_path):
        assert main(["satake", "--input", self._write(tmp_path, {"n": 2, "s": 3})]) == 3

    def test_bad_json(self, tmp_path):
        f = tmp_path / "in.json"
        f.write_text("{")
        assert main(["satake", "--input", str(f)]) == 2

    def test_batch(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("KOTTRACE_THREADS", "3")
        assert main(["batch", "--input", self._write(tmp_path, [COUNT, {"command": "x"}])]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out[0]["result"] == "27" and out[1]["error"]["kind"] == "usage"

    def test_batch_needs_list(self, tmp_path):
        assert main(["batch", "--input", self._write(tmp_path, COUNT)]) == 2

    def test_stdin(self, monkeypatch, capsys):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"lambda": [2], "mu": [1, 1]})))
        assert main(["cosets"]) == 0
        assert json.loads(capsys.readouterr().out)["result"] == [[1, 2]]

    def test_byte_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        src = self._write(tmp_path, COUNT["params"])
        main(["count", "--input", src, "--output", str(a)])
        main(["count", "--input", src, "--output", str(b)])
        assert a.read_bytes() == b.read_bytes()
