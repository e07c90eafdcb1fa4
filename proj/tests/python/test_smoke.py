import bigalois

E1 = "matrix 2\n0 1\n-1 0\n"
IE1 = "root i: x^2 + 1\nmatrix 2\n0 i\n-i 0\n"


def test_present_reports_trace_and_genericity():
    r = bigalois.present("matrix 2\n0 1\n-1/2 0\n")
    assert r.ok
    assert r.data["trace"] == "-5/2"
    assert [root["q"] for root in r.data["roots"]] == ["2", "1/2"]
    assert r.data["cosemisimple"] is True


def test_present_flags_roots_of_unity():
    r = bigalois.present("matrix 2\n1 1\n0 1\n")
    assert r.data["cosemisimple"] is False
    assert r.data["roots"][0]["genericity"]["root_of_unity_order"] == 3


def test_bigalois_certificate():
    r = bigalois.bigalois(E1, E1)
    assert r.exit_code == 0
    assert r.data["nonvanishing"] == "Positive"
    assert r.data["rewrite_system"]["confluence"]["ambiguities"] == 8
    assert r.data["rewrite_system"]["basis_counts"][:3] == [1, 4, 9]


def test_fusion():
    assert bigalois.fusion("1", "1").data["decomposition"] == "U0 + U2"
    r = bigalois.fusion("U4", "U1", regime="root5")
    assert r.data["filtration"] == "[U3, V1, U3]"


def test_verify_cqg():
    assert bigalois.verify("cqg", [E1, IE1]).data["cqg"]["mu"] == "-i"
    assert bigalois.verify("cqg", ["matrix 2\n1 0\n0 -1\n", "matrix 2\n1 0\n0 1\n"]).exit_code == 2


def test_input_errors_use_exit_code_4():
    r = bigalois.present("matrix 2\n1 1\n1 1\n")
    assert r.exit_code == 4
    assert "singular" in r.data["error"]
