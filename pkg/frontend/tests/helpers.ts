/** Test helpers: a fetch stub that replays recorded gateway payloads. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import type { FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export interface Fixture {
  status: number;
  body: unknown;
}

export function fixture(name: string): Fixture {
  const text = readFileSync(join(here, "fixtures", `${name}.json`), "utf8");
  return JSON.parse(text) as Fixture;
}

export interface RecordedCall {
  url: string;
  body: unknown;
}

/** Replies to every request with the given fixture and records calls. */
export function replayFetch(
  fix: Fixture,
  calls: RecordedCall[] = [],
): FetchLike {
  return async (url, init) => {
    calls.push({
      url,
      body:
        typeof init?.body === "string" ? JSON.parse(init.body) : undefined,
    });
    return new Response(JSON.stringify(fix.body), {
      status: fix.status,
      headers: { "content-type": "application/json" },
    });
  };
}

/** Hangs until aborted; used to prove stale requests get cancelled. */
export function hangingFetch(): FetchLike {
  return (_url, init) =>
    new Promise((_resolve, reject) => {
      init?.signal?.addEventListener("abort", () => {
        reject(new DOMException("aborted", "AbortError"));
      });
    });
}
