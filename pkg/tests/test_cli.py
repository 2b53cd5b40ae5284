import json

from preper.bounds import BoundReport, recompute
from preper.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_headline(capsys):
    code, out, _ = run(capsys, "bound", "--c", "1", "--primes", "2")
    assert code == 0
    assert "451287434" in out


def test_bound_json_roundtrip(capsys):
    code, out, _ = run(capsys, "bound", "--c", "1", "--primes", "2", "--json")
    assert code == 0
    report = BoundReport.from_json(out)
    assert recompute(report).p_value == report.p_value


def test_delta_row(capsys):
    code, out, _ = run(capsys, "delta", "--c", "1", "--primes", "3")
    assert code == 0
    assert "p^-3/2" in out and "indifferent" in out


def test_delta_json_triple(capsys):
    code, out, _ = run(capsys, "delta", "--c", "1", "--primes", "3", "--json")
    payload = json.loads(out)
    rows = {r["place"]: r for r in payload["rows"]}
    assert rows["3"]["triple"] == [3, 3, 2]


def test_delta_excluded_region_exit_2(capsys):
    code, out, _ = run(capsys, "delta", "--c=-1999999999/1000000000", "--primes", "3")
    assert code == 2
    assert "unverified" in out


def test_height_verb(capsys):
    code, out, _ = run(capsys, "height", "--c", "1/4", "--alpha", "1", "--primes", "2", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["hhat"]["units"] == "nats"
    places = {row["place"] for row in payload["local"]}
    assert {"inf", "2"} <= places


def test_verify_verb_passes(capsys):
    code, out, _ = run(capsys, "verify", "--c", "1", "--primes", "2", "--n-max", "3")
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out


def test_census_and_sunits(capsys):
    code, out, _ = run(capsys, "census", "--c", "1", "--primes", "2", "--n-max", "3")
    assert code == 0
    assert "S-unit differences" in out
    code, out, _ = run(capsys, "sunits", "--c", "1", "--primes", "2", "--n-max", "5")
    assert code == 0
    assert "4" in out
    code, out, _ = run(capsys, "census", "--c", "1", "--primes", "2", "--n-max", "2", "--csv")
    assert code == 0
    assert out.splitlines()[0].startswith("n,m,degree")


def test_bad_prime_delta_is_excluded_not_computed(capsys):
    code, out, _ = run(capsys, "delta", "--c", "3/2", "--primes", "2,3")
    assert code == 0
    assert "bad-reduction" in out


def test_int_bound_requires_finite_prime_falls_to_uniform(capsys):
    code, out, _ = run(capsys, "bound", "--c", "3", "--primes", "")
    assert code == 0
    assert "uniform" in out


def test_census_rejects_fractional_alpha(capsys):
    import pytest
    with pytest.raises(SystemExit):
        main(["census", "--c", "1", "--alpha", "1/2", "--primes", "2", "--n-max", "2"])


def test_height_boundary_case_exits_1(capsys):
    # |alpha|_2 = |c|_2^(1/2): the excluded bad-place case
    code, _, err = run(capsys, "height", "--c", "1/4", "--alpha", "1/2", "--primes", "2")
    assert code == 1
    assert "halve" in err
