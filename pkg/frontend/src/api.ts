/**
 * Thin typed client for the clima HTTP API.
 *
 * Every number and byte the UI shows comes through here; there is no
 * client-side recomputation of any metric. Chart and CSV downloads reuse
 * the exact URL the display fetch used, so a saved file is byte-identical
 * to what the browser rendered.
 */

import type { Health, SessionInfo, StationPage } from './types.js'

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail?: Record<string, unknown>,
  ) {
    super(message)
  }
}

export type QueryParams = Record<string, string | number | undefined>

function buildQuery(params: QueryParams): string {
  const search = new URLSearchParams()
  for (const [key, value] of Object.entries(params)) {
    if (value !== undefined && value !== '') search.set(key, String(value))
  }
  const text = search.toString()
  return text ? `?${text}` : ''
}

async function raiseForStatus(resp: Response): Promise<Response> {
  if (resp.ok) return resp
  let code = 'http_error'
  let message = `${resp.status} ${resp.statusText}`
  let detail: Record<string, unknown> | undefined
  try {
    const body = await resp.json()
    if (body && body.error) {
      code = body.error.code
      // shown to the user verbatim; the server writes these for humans
      message = body.error.message
      detail = body.error.detail
    }
  } catch {
    /* non-JSON error body; keep the status line */
  }
  throw new ApiError(resp.status, code, message, detail)
}

export class ApiClient {
  constructor(readonly baseUrl: string = '') {}

  private async getJson<T>(path: string): Promise<T> {
    const resp = await fetch(this.baseUrl + path)
    return (await raiseForStatus(resp)).json()
  }

  health(): Promise<Health> {
    return this.getJson('/api/health')
  }

  stations(params: { q?: string; bbox?: string; page?: number; page_size?: number } = {}):
    Promise<StationPage> {
    return this.getJson('/api/stations' + buildQuery(params))
  }

  async createSessionFromStation(stationId: string): Promise<SessionInfo> {
    const resp = await fetch(this.baseUrl + '/api/sessions', {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ station_id: stationId }),
    })
    return (await raiseForStatus(resp)).json()
  }

  /** Upload an EPW as the raw request body (anything but application/json). */
  async uploadEpw(text: string): Promise<SessionInfo> {
    const resp = await fetch(this.baseUrl + '/api/sessions', {
      method: 'POST',
      headers: { 'content-type': 'text/plain' },
      body: text,
    })
    return (await raiseForStatus(resp)).json()
  }

  analysis<T>(sessionId: string, kind: string, params: QueryParams = {}): Promise<T> {
    return this.getJson<T>(
      `/api/sessions/${sessionId}/analysis/${kind}` + buildQuery(params))
  }

  chartUrl(sessionId: string, kind: string, params: QueryParams = {}): string {
    return this.baseUrl +
      `/api/sessions/${sessionId}/charts/${kind}.svg` + buildQuery(params)
  }

  frameCsvUrl(sessionId: string): string {
    return this.baseUrl + `/api/sessions/${sessionId}/frame.csv`
  }

  epwUrl(sessionId: string): string {
    return this.baseUrl + `/api/sessions/${sessionId}/epw`
  }

  /** Fetch any of the URLs above; used for both display and download. */
  async fetchText(url: string): Promise<string> {
    const resp = await fetch(url)
    return (await raiseForStatus(resp)).text()
  }
}
