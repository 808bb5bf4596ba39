"""Record real service responses into a fixture for the dashboard tests.

Spins the HTTP service in-process, drives the three-user scenario plus a
spread of schemes, and captures 10 filter submissions (request and
response verbatim) together with a settings round-trip transcript.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from fastapi.testclient import TestClient  # noqa: E402

from idpf.service import ServiceConfig, create_app  # noqa: E402

OUT = REPO / "frontend" / "tests" / "fixtures"

SUBMISSIONS = [
    ("alice", "call jack at +36301234567 today", {}),
    ("alice", "the nickname is off limits", {}),
    ("bob", "the nickname is off limits", {}),
    ("alice", "agent smith met agent jones", {"categories": ["names"]}),
    ("alice", "my pin is 4421 not 9999", {"numerals": True}),
    ("alice", "see https://example.com/a?q=1 and www.example.org", {"categories": ["links"]}),
    ("alice", "jack has the flu in hungary", {"categories": ["diseases", "countries"]}),
    ("alice", "meet at baker street 221b", {"categories": ["street_names"], "numerals": True}),
    ("alice", "", {}),
    ("bob", "smith és jones: +36301234567, room 12",
     {"categories": ["names"], "numerals": True, "placeholder": "###"}),
]


def main() -> int:
    config = ServiceConfig(db_path=":memory:", pbkdf2_iterations=1200)
    records = []
    transcript = []
    with TestClient(create_app(config)) as tc:
        users = {}
        tokens = {}
        for name in ("alice", "bob", "jack"):
            users[name] = tc.post(
                "/users", json={"username": name, "password": f"{name}-passphrase"}
            ).json()["user_id"]
            tokens[name] = tc.post(
                "/sessions", json={"username": name, "password": f"{name}-passphrase"}
            ).json()["token"]
        app = tc.post("/apps", json={"name": "DashApp"}).json()
        for name in ("alice", "bob", "jack"):
            tc.post(
                "/grants", json={"app_id": app["app_id"]},
                headers={"Authorization": f"Bearer {tokens[name]}"},
            )

        def put(user, kind, term):
            res = tc.put(
                f"/lists/{kind}/terms",
                json={"app_id": app["app_id"], "term": term},
                headers={"Authorization": f"Bearer {tokens[user]}"},
            )
            return res.json()

        put("jack", "srb", "+36301234567")
        put("jack", "srb", "landline")
        put("jack", "srw", "landline")
        put("alice", "orb", "nickname")

        for sender, text, scheme in SUBMISSIONS:
            body = {"sender": users[sender], "text": text}
            if scheme:
                body["scheme"] = scheme
            res = tc.post("/filter", json=body, headers={"X-Api-Key": app["api_key"]})
            assert res.status_code == 200, res.text
            payload = res.json()
            records.append(
                {
                    "sender": sender,
                    "text": text,
                    "scheme": scheme,
                    "filtered_text": payload["filtered_text"],
                    "report": payload["report"],
                }
            )

        # settings round trip: add two terms, remove one, capture each view
        transcript.append({"action": "put", "kind": "srb", "term": "alpha",
                           "view": put("alice", "srb", "alpha")})
        transcript.append({"action": "put", "kind": "srw", "term": "alpha",
                           "view": put("alice", "srw", "alpha")})
        res = tc.request(
            "DELETE", "/lists/srb/terms",
            json={"app_id": app["app_id"], "term": "alpha"},
            headers={"Authorization": f"Bearer {tokens['alice']}"},
        )
        transcript.append({"action": "delete", "kind": "srb", "term": "alpha",
                           "view": res.json()})

    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "filter_fixtures.json").write_text(
        json.dumps({"submissions": records, "settings_transcript": transcript}, indent=2) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {OUT / 'filter_fixtures.json'} ({len(records)} submissions)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
