"""Pipeline pieces that run quickly, and the CLI surface."""

import json
import subprocess
import sys

import pytest

from x3y9z2.dataio import data_hashes
from x3y9z2.param import STValue
from x3y9z2.pipeline import (brute_search, report_to_json, run_lift_stage,
                             signed_triples, verify_theorem1)

FINAL_SET = [(-7, 2, -13), (-7, 2, 13), (-1, 1, 0), (0, 1, -1), (0, 1, 1),
             (1, -1, 0), (1, 0, -1), (1, 0, 1), (2, 1, -3), (2, 1, 3)]


class TestBruteSearch:
    def test_y_zero(self):
        sols = brute_search(0, 100)
        assert signed_triples(sols) == [(1, 0, -1), (1, 0, 1)]

    def test_membership(self):
        sols = signed_triples(brute_search(2, 10))
        assert (-7, 2, 13) in sols
        assert (-7) ** 3 + 2**9 == 169 == 13**2

    def test_full_oracle(self):
        assert signed_triples(brute_search(3, 10_000)) == FINAL_SET

    def test_excludes_imprimitive(self):
        # 4^3 + 2^9 = 24^2 but gcd = 2
        sols = signed_triples(brute_search(2, 10))
        assert (4, 2, 24) not in sols


class TestLiftStage:
    def _values(self, strs):
        return {STValue.parse(s) for s in strs}

    def test_assembly_from_canonical_values(self):
        fam3 = self._values(["-2", "0", "1", "2", "4", "oo",
                             "-1", "-1/2"])
        fam1 = self._values(["-3", "-1", "0", "1", "3", "oo"])
        final, rows, claims = run_lift_stage(fam3, fam1)
        verdicts = {c.claim_id: c.verdict for c in claims}
        assert verdicts["assembly family3 coverage"] == "PASS"
        assert verdicts["assembly family1 coverage"] == "PASS"
        assert verdicts["assembly family3 row (s,t)=(1,0)"] == "CORRECTED"
        t1, final_signed = verify_theorem1(final)
        assert final_signed == FINAL_SET
        t1v = {c.claim_id: c.verdict for c in t1}
        assert t1v["theorem1 entry (1,1,0)"] == "CORRECTED"
        assert t1v["theorem1 entry (-7,2,13)"] == "PASS"


class TestEq5Stage:
    def test_per_row_candidate_values(self):
        """Torsion values per rank-table row, with intersection where both
        quotients have rank 0."""
        from x3y9z2.pipeline import run_eq5_stage
        eq5 = run_eq5_stage()
        rows = dict(eq5["per_row_values"])
        assert rows[1] == ["-2", "0", "oo"]      # E1 side, c1 = 1
        assert rows[2] == ["-2", "0"]            # both sides rank 0: intersection
        assert rows[4] == ["0"]                  # E2 trivial torsion kills more
        assert rows[20] == ["-2", "2"]           # E1 side, c1 = 2
        assert rows[13] == ["0", "4"]            # E2 side, c2 = 6
        assert sorted(eq5["values"],
                      key=lambda v: v.sort_key()) == \
            [STValue(-2), STValue(0), STValue(1), STValue(2), STValue(4),
             STValue.infinity()]


def test_report_json_deterministic():
    payload = {"b": [3, 1], "a": {"y": 2, "x": 1}}
    assert report_to_json(payload) == report_to_json(json.loads(json.dumps(payload)))


def test_data_hashes_cover_all_files():
    hashes = data_hashes()
    assert set(hashes) == {"selmer_generators.json", "mw_generators.json",
                           "paper_tables.json"}
    assert all(len(h) == 64 for h in hashes.values())


class TestCli:
    def _run(self, *args):
        return subprocess.run([sys.executable, "-m", "x3y9z2.cli", *args],
                              capture_output=True, text=True, timeout=300)

    def test_verify_identities(self):
        out = self._run("param", "verify-identities")
        assert out.returncode == 0
        assert out.stdout.count("PASS") == 12

    def test_search_json(self, tmp_path):
        out = self._run("--json-out", str(tmp_path / "s.json"),
                        "search", "--y-bound", "1", "--aux-bound", "50")
        assert out.returncode == 0
        data = json.loads((tmp_path / "s.json").read_text())
        assert [0, 1, 1] in data["solutions"]

    def test_lift_verdict(self):
        out = self._run("param", "lift", "--x", "132", "--v", "-24", "--z", "1512")
        assert out.returncode == 0
        data = json.loads(out.stdout)
        assert data["equivalent_to_primitive"] is False

    def test_descent_build(self):
        out = self._run("descent", "build", "--eq", "5", "--delta", "0")
        assert out.returncode == 0
        data = json.loads(out.stdout)
        assert data["identity_verified"] is True
        assert data["forms"]["Q0"] == {"y0^3": "1"}

    def test_local_sweep_eq1(self):
        out = self._run("local", "sweep", "--eq", "1", "--p", "3")
        assert out.returncode == 0
        data = json.loads(out.stdout)
        assert data["n_classes"] == 9
        assert data["survivors"] == 4

    def test_ec_verify_tables(self):
        out = self._run("ec", "verify-tables")
        assert out.returncode == 0
        assert "unexpected problems: 0" in out.stdout
        assert out.stdout.count("CORRECTED") == 4

    def test_chabauty_run_row0(self):
        out = self._run("chabauty", "run", "--eq", "1", "--delta", "0")
        assert out.returncode == 0
        data = json.loads(out.stdout)
        assert data["outcome"]["status"] == "Complete"
        assert data["outcome"]["values"] == ["oo"]


def test_data_dir_override_catches_tampering(tmp_path):
    """A corrupted trusted-data file must surface as a FAIL, not pass
    silently (the auditability contract of --data-dir)."""
    import json as jsonlib
    import shutil
    import subprocess
    import sys
    from importlib import resources
    src = resources.files("x3y9z2.data")
    for name in ("selmer_generators.json", "mw_generators.json", "paper_tables.json"):
        shutil.copy(str(src.joinpath(name)), tmp_path / name)
    mw = jsonlib.loads((tmp_path / "mw_generators.json").read_text())
    mw["curves"][0]["points"][0]["x"][0] = "3"  # g1 pushed off the curve
    (tmp_path / "mw_generators.json").write_text(jsonlib.dumps(mw))
    out = subprocess.run([sys.executable, "-m", "x3y9z2.cli",
                          "--data-dir", str(tmp_path), "ec", "verify-tables"],
                         capture_output=True, text=True, timeout=300)
    assert out.returncode != 0
    assert "FAIL" in out.stdout


def test_rank_condition_violated(mw_data):
    from x3y9z2.chabauty.engine import ChabautyRun, RankConditionViolated, RationalFunctionOnE
    from x3y9z2.dataio import quartic_field
    K = quartic_field()
    E = mw_data.curve(1)
    g = mw_data.points(1)[0]
    psi = RationalFunctionOnE(field=K, num=(K.one(), K.zero(), K.zero()),
                              den=(K.one(), K.one(), K.zero()))
    with pytest.raises(RankConditionViolated):
        ChabautyRun(E, psi, [g, g, g, g], [], 11)
