"""
Steering a transition over HTTP
===============================

The decision service wraps a scenario in a session: advance the filter,
change preferences mid-run, and preview what-ifs without committing.
Run `flowrank serve --port 8080` for a real server; here the app is
exercised in-process (requires the `test` extra for the HTTP client).
"""

import dataclasses

from fastapi.testclient import TestClient

import flowrank as fr
from flowrank.io import scenario_to_dict
from flowrank.service import create_app

client = TestClient(create_app())

scenario = dataclasses.replace(fr.bundled_switch_scenario(), filter=fr.make_filter(0.5))
state = client.post("/api/sessions", json={"scenario": scenario_to_dict(scenario)}).json()
session = state["session_id"]
print("created session", session)
print("step 0 leader:", state["ranking"][0]["id"])

# Preview two paces before committing to either.
for alpha in (0.1, 0.5):
    preview = client.post(
        f"/api/sessions/{session}/whatif", json={"alpha": alpha, "horizon": 60}
    ).json()
    events = preview["events"]
    when = f"t = {events[0]['crossing_time']:.2f}" if events else "never"
    print(f"what-if alpha={alpha}: leadership changes at {when}")

# The previews did not move the session.
assert client.get(f"/api/sessions/{session}").json()["step"] == 0

# Advance for real and watch the events arrive.
advanced = client.post(f"/api/sessions/{session}/step", json={"count": 10}).json()
print("after 10 steps leader:", advanced["ranking"][0]["id"])
for event in advanced["new_events"]:
    print(f"  {event['upper_id']} overtook {event['lower_id']} "
          f"near t = {event['crossing_time']:.2f}")
