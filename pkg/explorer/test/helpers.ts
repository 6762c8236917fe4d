// Fetch interception over payloads recorded from the real fixture server
// (scripts/dump_api_fixtures.py). Tests assert against the same bytes the
// HTTP API would deliver.
import { readFileSync, readdirSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { vi } from "vitest";

const FIXTURE_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

interface Recorded {
  path: string;
  params: Record<string, string>;
  body: unknown;
}

function loadAll(): Recorded[] {
  return readdirSync(FIXTURE_DIR)
    .filter((f) => f.endsWith(".json"))
    .map((f) => JSON.parse(readFileSync(join(FIXTURE_DIR, f), "utf-8")) as Recorded);
}

const RECORDINGS = loadAll();

export function payloadFor(name: string): any {
  const raw = readFileSync(join(FIXTURE_DIR, `${name}.json`), "utf-8");
  return (JSON.parse(raw) as Recorded).body;
}

export function payloadTextFor(name: string): string {
  const raw = readFileSync(join(FIXTURE_DIR, `${name}.json`), "utf-8");
  return JSON.stringify((JSON.parse(raw) as Recorded).body);
}

function matches(recorded: Recorded, path: string, params: URLSearchParams): boolean {
  if (recorded.path !== path) return false;
  const expected = Object.entries(recorded.params);
  const got = [...params.entries()];
  if (expected.length !== got.length) return false;
  return expected.every(([k, v]) => params.get(k) === v);
}

export interface InterceptedCall {
  path: string;
  params: Record<string, string>;
}

/** Install a fetch mock that serves recorded payloads and logs every call. */
export function installFetchMock(): InterceptedCall[] {
  const calls: InterceptedCall[] = [];
  const mock = vi.fn(async (input: RequestInfo | URL) => {
    const url = new URL(String(input), "http://fixture.test");
    const params = url.searchParams;
    calls.push({ path: url.pathname, params: Object.fromEntries(params.entries()) });
    const hit = RECORDINGS.find((r) => matches(r, url.pathname, params));
    if (!hit) {
      return new Response(JSON.stringify({ detail: "no recorded payload" }),
                          { status: 404, headers: { "content-type": "application/json" } });
    }
    return new Response(JSON.stringify(hit.body),
                        { status: 200, headers: { "content-type": "application/json" } });
  });
  vi.stubGlobal("fetch", mock);
  return calls;
}

/** All numeric strings rendered as visible text inside an element.
 *  Walks individual text nodes so numbers in adjacent elements never fuse. */
export function displayedNumbers(root: HTMLElement): string[] {
  const out: string[] = [];
  const walker = root.ownerDocument.createTreeWalker(root, 4 /* SHOW_TEXT */);
  while (walker.nextNode()) {
    const text = walker.currentNode.nodeValue ?? "";
    out.push(...(text.match(/\d+(?:\.\d+)?(?:e-?\d+)?/gi) ?? []));
  }
  return out;
}
