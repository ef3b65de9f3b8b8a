import pytest


async def test_migrations_are_recorded(registry):
    applied = await registry.connection.applied_migrations()
    assert [m["version"] for m in applied] == [1]
    # reconnecting does not re-apply
    await registry.close()
    await registry.connect()
    assert len(await registry.connection.applied_migrations()) == 1


async def test_invocation_lifecycle(registry):
    first = await registry.start_invocation("rho", "abc123abc123", {"k_max": 2}, "out/rho-1")
    row = await registry.get_invocation(first)
    assert row["status"] == "running"
    assert await registry.latest_invocation("rho") is None
    await registry.finish_invocation(first, "ok", 1.5)
    latest = await registry.latest_invocation("rho")
    assert latest["id"] == first
    assert latest["wall_time"] == pytest.approx(1.5)


async def test_seed_summaries_and_level_estimates(registry):
    invocation = await registry.start_invocation("simulate", "h", {}, "out/sim")
    payload = {
        "seed": 3,
        "replicate": 0,
        "levels": [
            {"k": 1, "gamma_hat": 1.2, "completed": True, "completion_time": 9.5},
            {"k": 2, "gamma_hat": 2.1, "completed": False, "completion_time": None},
        ],
    }
    await registry.store_seed_summary(invocation, payload, 0.25)
    assert await registry.get_seed_payloads(invocation) == [payload]
    levels = await registry.get_level_estimates(invocation)
    assert sorted(levels) == [1, 2]
    assert levels[2][0]["completed"] is False
    assert levels[1][0]["gamma_hat"] == pytest.approx(1.2)


async def test_latest_artifact_skips_failed_invocations(registry):
    good = await registry.start_invocation("bounds", "h", {}, "out/a")
    await registry.record_artifact(good, "bounds_summary", "out/a/bounds_summary.json")
    await registry.finish_invocation(good, "ok", 1.0)
    bad = await registry.start_invocation("bounds", "h", {}, "out/b")
    await registry.record_artifact(bad, "bounds_summary", "out/b/bounds_summary.json")
    await registry.finish_invocation(bad, "failed", 1.0)
    latest = await registry.latest_artifact("bounds_summary")
    assert latest["path"] == "out/a/bounds_summary.json"
    assert await registry.latest_artifact("thresholds") is None
    assert len(await registry.get_artifacts(good)) == 1
