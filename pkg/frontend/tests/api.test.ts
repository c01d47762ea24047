import { describe, expect, it } from "vitest";
import { Gateway, PanelRunner } from "../src/api.js";
import type { QwResponse } from "../src/types.js";
import { fixture, hangingFetch, replayFetch, type RecordedCall } from "./helpers.js";

describe("gateway client", () => {
  it("posts JSON to /api/v1 and unwraps ok responses", async () => {
    const calls: RecordedCall[] = [];
    const gateway = new Gateway("", replayFetch(fixture("qw_three_nodes_z0"), calls));
    const result = await gateway.post<QwResponse>("/qw", { a: 1 });
    expect(calls).toHaveLength(1);
    expect(calls[0]?.url).toBe("/api/v1/qw");
    expect(calls[0]?.body).toEqual({ a: 1 });
    expect(result.kind).toBe("ok");
    if (result.kind !== "ok") return;
    expect(result.data.schema_version).toBe("1");
  });

  it("maps 4xx bodies onto error results with the server's code", async () => {
    const gateway = new Gateway("", replayFetch(fixture("schema_violation_400")));
    const result = await gateway.post("/qw", {});
    expect(result.kind).toBe("error");
    if (result.kind !== "error") return;
    expect(result.status).toBe(400);
    expect(result.code).toBe("schema-violation");
  });

  it("turns a refused connection into a network error result", async () => {
    const gateway = new Gateway("", async () => {
      throw new TypeError("fetch failed");
    });
    const result = await gateway.post("/qw", {});
    expect(result.kind).toBe("error");
    if (result.kind !== "error") return;
    expect(result.code).toBe("network");
  });

  it("identical requests produce identical results through the client", async () => {
    const gateway = new Gateway("", replayFetch(fixture("hom_balanced_splitter")));
    const body = { modes: 2, state: "|11>", parameters: [] };
    const first = await gateway.post("/bosonsampling", body);
    const second = await gateway.post("/bosonsampling", body);
    expect(JSON.stringify(first)).toBe(JSON.stringify(second));
  });
});

describe("panel runner", () => {
  it("a new submission aborts the stale one", async () => {
    let mode: "hang" | "reply" = "hang";
    const hang = hangingFetch();
    const reply = replayFetch(fixture("qw_three_nodes_z0"));
    const gateway = new Gateway("", (url, init) =>
      mode === "hang" ? hang(url, init) : reply(url, init),
    );
    const runner = new PanelRunner(gateway);
    const stale = runner.run<QwResponse>("/qw", { run: 1 });
    mode = "reply";
    const fresh = await runner.run<QwResponse>("/qw", { run: 2 });
    expect(fresh.kind).toBe("ok");
    expect((await stale).kind).toBe("aborted");
  });
});
