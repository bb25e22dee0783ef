def test_presets_listing(client):
    response = client.get("/presets")
    assert response.status_code == 200
    payload = response.get_json()
    assert [p["slug"] for p in payload][:3] == ["bg", "dicke", "higgs"]
    su2 = next(p for p in payload if p["slug"] == "su2")
    assert su2["kind"] == "finite"
    assert su2["defaults"] == {"l": "1"}


def test_unknown_preset_is_not_found(client):
    assert client.get("/presets/nope").status_code == 404
    assert client.post("/presets/nope/cs", json={}).status_code == 404


def test_preset_detail_takes_query_parameters(client):
    response = client.get("/presets/bg?phi=-2")
    assert response.status_code == 200
    payload = response.get_json()
    assert payload["casimir"] == [{"weight": "2/1", "C": "-2/1"}]


def test_preset_detail_rejects_unknown_parameters(client):
    response = client.get("/presets/bg?spin=3")
    assert response.status_code == 400
    assert response.get_json()["error"] == "config_error"


def test_coherent_states_endpoint(client):
    response = client.post("/presets/bg/cs", json={"grid": [[0.5, 0.0], 1.5]})
    assert response.status_code == 200
    payload = response.get_json()
    assert payload["family"] == "annihilation"
    assert [p["parameter"] for p in payload["points"]] == [[0.5, 0.0], [1.5, 0.0]]
    assert payload["files"] == []


def test_coherent_states_on_finite_module(client):
    response = client.post("/presets/su2/cs", json={})
    assert response.status_code == 400
    payload = response.get_json()
    assert payload["error"] == "pole_on_spectrum"
    assert payload["message"].startswith("no canonical conjugate on finite module")


def test_coherent_states_validation(client):
    response = client.post("/presets/bg/cs", json={"workers": 0})
    assert response.status_code == 400
    assert "workers" in response.get_json()["fields"]
    response = client.post("/presets/bg/cs", json=[1, 2])
    assert response.status_code == 400


def test_defaults(client):
    payload = client.get("/defaults").get_json()
    assert payload["family"] == "annihilation"
    assert payload["n_max"] == 8
