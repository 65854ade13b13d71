// A fake fetch routing requests to frozen payloads while recording every
// call, so tests can assert the client's read-only discipline.

export interface RecordedCall {
  url: string;
  method: string;
  body?: unknown;
}

export type RouteTable = Record<string, unknown | ((call: RecordedCall) => unknown)>;

export function fakeFetch(routes: RouteTable, calls: RecordedCall[] = []) {
  const fetchFn = async (url: string, init?: RequestInit): Promise<Response> => {
    const call: RecordedCall = {
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    };
    calls.push(call);
    const path = url.split("?")[0];
    const key = `${call.method} ${path}`;
    const route = routes[key] ?? routes[path];
    if (route === undefined) {
      return new Response(JSON.stringify({ detail: `no route ${key}` }), {
        status: 404,
        headers: { "content-type": "application/json" },
      });
    }
    const payload = typeof route === "function" ? (route as (c: RecordedCall) => unknown)(call) : route;
    return new Response(JSON.stringify(payload), {
      status: call.method === "POST" ? 201 : 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}
