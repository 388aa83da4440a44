#!/usr/bin/env python3
"""Regenerate the checked-in API fixtures from a live in-process service.

The fixture corpus produces a path-shaped co-author graph
ALPHA - BETA - GAMMA - DELTA with edge values 2/3, 1/9, 2/3, so a 0.5
threshold removes exactly the middle edge, and BETA appears in exactly
three documents.
"""

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from assograph.ioservice.http import ServiceConfig, create_app

RECORDS = [
    {"id": "D1", "title": "Interface alloys", "authors": ["Alpha, A.", "Beta, B."], "year": 2001},
    {"id": "D2", "title": "Grain growth", "authors": ["Alpha, A.", "Beta, B."], "year": 2002},
    {"id": "D3", "title": "Bridging study", "authors": ["Beta, B.", "Gamma, C."], "year": 2003},
    {"id": "D4", "title": "Film stress", "authors": ["Gamma, C.", "Delta, D."], "year": 2004},
    {"id": "D5", "title": "Surface maps", "authors": ["Gamma, C.", "Delta, D."], "year": 2005},
]

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def dump(name: str, payload) -> None:
    (OUT / name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {name}")


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    stream = "\n".join(json.dumps(r) for r in RECORDS) + "\n"
    with tempfile.TemporaryDirectory() as tmp:
        app = create_app(ServiceConfig(data_dir=Path(tmp)))
        with TestClient(app) as client:
            uploaded = client.post("/corpora", content=stream).json()
            cid = uploaded["id"]
            dump("upload.json", uploaded)

            full = client.post(
                f"/corpora/{cid}/graphs",
                json={"mode": "coauthor", "threshold": 0.0, "levels": 1},
            ).json()
            dump("build_s0.json", full)
            view_s0 = client.get(f"/graphs/{full['graph_id']}").json()
            dump("view_s0.json", view_s0)

            for node in view_s0["nodes"]:
                if node["kind"] == "cluster":
                    detail = client.get(
                        f"/graphs/{full['graph_id']}/clusters/{node['id']}"
                    ).json()
                    dump(f"cluster_{node['id']}.json", detail)

            cut = client.post(
                f"/corpora/{cid}/graphs",
                json={"mode": "coauthor", "threshold": 0.5, "levels": 1},
            ).json()
            dump("build_s05.json", cut)
            dump("view_s05.json", client.get(f"/graphs/{cut['graph_id']}").json())

            bare = client.post(
                f"/corpora/{cid}/graphs",
                json={"mode": "coauthor", "threshold": 0.9, "levels": 1},
            ).json()
            dump("view_s09.json", client.get(f"/graphs/{bare['graph_id']}").json())

            fixpoint = client.post(
                f"/corpora/{cid}/graphs",
                json={"mode": "coauthor", "threshold": 0.0},
            ).json()
            dump("view_fixpoint.json", client.get(f"/graphs/{fixpoint['graph_id']}").json())

            dump("docs_u1.json", client.get(f"/corpora/{cid}/units/u1/documents").json())
            dump(
                "path_u0_u2.json",
                client.get(f"/graphs/{full['graph_id']}/paths?from=u0&to=u2").json(),
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
