/** Client unit tests against a mocked fetch: error envelope parsing and
 * network-failure handling with retry, independent of a live service. */

import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiError, Client } from "../src/api.js";
import { App } from "../src/app.js";

const SESSION = {
  id: "abc",
  generator: "rich_lyrics",
  status: "active" as const,
  revision: 0,
  accepted_lines: ["seed line"],
  candidates: [
    { index: 0, text: "line one", score: -2.0 },
    { index: 1, text: "line two", score: -3.0 },
  ],
  width: 3,
  lines_per_verse: 5,
};

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("Client", () => {
  it("parses the error envelope into ApiError", async () => {
    vi.stubGlobal("fetch", vi.fn(async () =>
      jsonResponse({ code: "revision_conflict", message: "stale" }, 409)));
    const client = new Client("http://x");
    const err = await client.choose("abc", 0, 0).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(409);
    expect(err.code).toBe("revision_conflict");
  });

  it("tolerates non-JSON error bodies", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => new Response("boom", { status: 500 })));
    const err = await new Client("").listGenerators().catch((e) => e);
    expect(err.code).toBe("unknown_error");
    expect(err.status).toBe(500);
  });

  it("sends the revision it was given", async () => {
    const seen: unknown[] = [];
    vi.stubGlobal("fetch", vi.fn(async (_url: string, init?: RequestInit) => {
      seen.push(JSON.parse(String(init?.body)));
      return jsonResponse(SESSION);
    }));
    await new Client("").choose("abc", 1, 7);
    expect(seen[0]).toEqual({ index: 1, revision: 7 });
  });
});

describe("App network-failure handling", () => {
  it("offers retry after a network error without losing the form", async () => {
    document.body.innerHTML = '<main id="app"></main>';
    const root = document.getElementById("app")!;
    let calls = 0;
    vi.stubGlobal("fetch", vi.fn(async (url: string) => {
      if (String(url).endsWith("/v1/generators")) {
        return jsonResponse({ generators: [
          { name: "rich_lyrics", width: 3, lines_per_verse: 5 }] });
      }
      calls += 1;
      if (calls === 1) throw new TypeError("network down");
      return jsonResponse(SESSION, 201);
    }));
    const app = new App(root, new Client(""), () => undefined);
    await app.start();
    (root.querySelector("#starter") as HTMLInputElement).value = "seed line";
    (root.querySelector("#start") as HTMLElement).click();
    await app.idle;

    expect(app.currentSession).toBeNull();
    expect(root.querySelector(".notice-error")?.textContent).toMatch(/network/i);
    const retry = root.querySelector(".retry") as HTMLElement;
    expect(retry).toBeTruthy();
    retry.click();
    await app.idle;
    expect(app.currentSession?.id).toBe("abc");
  });
});
