// Test transport: serves the captured gateway fixture bodies through the
// fetch interface, recording every request for interception-style asserts.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ApiClient, type FetchLike } from "../src/api.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

export function fixtureJson<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export interface RecordedRequest {
  method: string;
  path: string;
  body: unknown;
}

export class FixtureTransport {
  requests: RecordedRequest[] = [];
  private routes = new Map<string, { status: number; body: string }>();

  constructor() {
    const passages = fixtureJson<Record<string, unknown>>("passages.json");
    for (const [pid, payload] of Object.entries(passages)) {
      this.set("GET", `/passages/${encodeURIComponent(pid)}`, JSON.stringify(payload));
    }
    this.set("GET", "/documents", fixtureText("documents.json"));
    this.set("GET", "/questions/predefined", fixtureText("predefined.json"));
  }

  set(method: string, path: string, body: string, status = 200): void {
    this.routes.set(`${method} ${path}`, { status, body });
  }

  setJson(method: string, path: string, payload: unknown, status = 200): void {
    this.set(method, path, JSON.stringify(payload), status);
  }

  fetch: FetchLike = (input, init) => {
    const method = (init?.method ?? "GET").toUpperCase();
    let body: unknown = undefined;
    if (init?.body) body = JSON.parse(String(init.body));
    this.requests.push({ method, path: input, body });
    const route = this.routes.get(`${method} ${input}`);
    if (!route) {
      return Promise.resolve(
        new Response(JSON.stringify({ error: `no fixture for ${method} ${input}` }), {
          status: 404,
          headers: { "content-type": "application/json" },
        }),
      );
    }
    return Promise.resolve(
      new Response(route.body, {
        status: route.status,
        headers: { "content-type": "application/json" },
      }),
    );
  };

  client(): ApiClient {
    return new ApiClient("", this.fetch);
  }

  requestsTo(path: string): RecordedRequest[] {
    return this.requests.filter((r) => r.path === path);
  }
}

export function flushMicrotasks(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
