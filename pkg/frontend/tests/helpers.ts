/**
 * A fake backend for the UI tests: implements the service's JSON surface
 * with canned fixtures and logs every request so tests can assert exact
 * request counts and URLs.
 */

import { vi } from 'vitest'
import type { SessionInfo, StationRow, Summary } from '../src/types.js'

export const SUMMARY: Summary = {
  location: {
    city: 'Tropic Harbor',
    state_region: '-',
    country: 'TRP',
    latitude: 1.29,
    longitude: 103.85,
    elevation: 8,
    timezone: 8,
    wmo_id: '990010',
  },
  koppen: { label: 'Af', precipitation_missing: false },
  t_db_mean: 27.3,
  hottest_month: 'May',
  hottest_month_mean: 28.1,
  coldest_month: 'January',
  coldest_month_mean: 26.4,
  annual_ghi_kwh_m2: 1630.2,
  diffuse_share_pct: 55.1,
}

export const SESSION: SessionInfo = {
  session_id: 'sess01',
  n_records: 8760,
  origin: 'upload',
  expires_in_s: 86400,
  summary: SUMMARY,
}

export const STATIONS: StationRow[] = [
  { station_id: 'SGP_Tropic.Harbor.990010', name: 'Tropic Harbor', country: 'TRP',
    latitude: 1.29, longitude: 103.85, source: 'fixture' },
  { station_id: 'FIN_Taiga.Flats.990020', name: 'Taiga Flats', country: 'FIN',
    latitude: 64.9, longitude: 25.5, source: 'fixture' },
  { station_id: 'CPW_Cape.Westerly.990030', name: 'Cape Westerly', country: 'CPW',
    latitude: 37.62, longitude: -122.37, source: 'fixture' },
]

export const CSV_TEXT = 'year [-],month [-],t_db [C]\n2017,1,12.4\n'
export const EPW_TEXT = 'LOCATION,Tropic Harbor,-,TRP\nDATA,stub\n'
export const UPLOAD_ERROR =
  'line 1: header must begin with LOCATION'

export interface LoggedRequest {
  url: string
  method: string
  body?: string
}

export interface FakeApi {
  requests: LoggedRequest[]
  /** requests whose URL contains the given fragment */
  count(fragment: string): number
  /** install a one-shot gate delaying the next matching request */
  holdNext(fragment: string): () => void
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  })
}

function errorBody(status: number, code: string, message: string): Response {
  return json(status, { error: { code, message } })
}

/** deterministic per-URL SVG so byte-parity checks are meaningful */
export function svgFor(pathname: string, query: string): string {
  return `<svg xmlns="http://www.w3.org/2000/svg" data-path="${pathname}" data-query="${query}"><title>stub</title></svg>`
}

function route(url: URL, method: string, body?: string): Response {
  const path = url.pathname

  if (path === '/api/health') {
    return json(200, { status: 'ok', version: '0.0-test', stations: 3, sessions: 0 })
  }

  if (path === '/api/stations') {
    const q = (url.searchParams.get('q') ?? '').toLowerCase()
    const rows = q
      ? STATIONS.filter((s) => s.name.toLowerCase().includes(q))
      : STATIONS
    return json(200, { stations: rows, total: rows.length, page: 1, page_size: 500 })
  }

  if (path === '/api/sessions' && method === 'POST') {
    if (body && body.trimStart().startsWith('{')) {
      const parsed = JSON.parse(body) as { station_id?: string }
      const station = STATIONS.find((s) => s.station_id === parsed.station_id)
      if (!station) return errorBody(404, 'unknown_station', 'no such station')
      return json(201, {
        ...SESSION,
        origin: station.station_id,
      })
    }
    if (body && body.startsWith('LOCATION')) return json(201, SESSION)
    return errorBody(400, 'malformed_header', UPLOAD_ERROR)
  }

  const chart = path.match(/^\/api\/sessions\/([^/]+)\/charts\/([a-z_]+)\.svg$/)
  if (chart) {
    url.searchParams.sort()
    return new Response(svgFor(path, url.searchParams.toString()), {
      status: 200,
      headers: { 'content-type': 'image/svg+xml' },
    })
  }

  const analysis = path.match(/^\/api\/sessions\/([^/]+)\/analysis\/([a-z_]+)$/)
  if (analysis) {
    switch (analysis[2]) {
      case 'summary':
        return json(200, SUMMARY)
      case 'degree_days':
        return json(200, {
          base_heating: Number(url.searchParams.get('base_heating') ?? 18),
          base_cooling: Number(url.searchParams.get('base_cooling') ?? 21),
          hdd_monthly: Array(12).fill(10),
          cdd_monthly: Array(12).fill(2),
          hdd_annual: 120,
          cdd_annual: 24,
          method: 'daily-mean',
        })
      case 'natural_ventilation':
        return json(200, {
          eligible_hours: 3783,
          total_hours: 8760,
          eligible_pct: 43.2,
        })
      case 'utci':
        return json(200, {
          scenario: url.searchParams.get('scenario') ?? 'sun_wind',
          categories: ['a', 'b', 'c'],
          monthly_pct: Array.from({ length: 12 }, () => [10, 80, 10]),
          annual_pct: [10, 80, 10],
        })
      default:
        return errorBody(404, 'unknown_analysis', 'no such analysis')
    }
  }

  if (path.match(/^\/api\/sessions\/([^/]+)\/frame\.csv$/)) {
    return new Response(CSV_TEXT, {
      status: 200,
      headers: { 'content-type': 'text/csv; charset=utf-8' },
    })
  }
  if (path.match(/^\/api\/sessions\/([^/]+)\/epw$/)) {
    return new Response(EPW_TEXT, { status: 200 })
  }

  return errorBody(404, 'unknown_session', 'unknown session')
}

export function installFakeApi(): FakeApi {
  const requests: LoggedRequest[] = []
  const holds: Array<{ fragment: string; promise: Promise<void> }> = []
  const api: FakeApi = {
    requests,
    count(fragment) {
      return requests.filter((r) => r.url.includes(fragment)).length
    },
    holdNext(fragment) {
      let release!: () => void
      const promise = new Promise<void>((resolve) => { release = resolve })
      holds.push({ fragment, promise })
      return release
    },
  }

  vi.stubGlobal('fetch', vi.fn(
    async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
      const urlText = String(input)
      const method = init?.method ?? 'GET'
      const body = typeof init?.body === 'string' ? init.body : undefined
      requests.push({ url: urlText, method, body })

      const heldIndex = holds.findIndex((h) => urlText.includes(h.fragment))
      if (heldIndex >= 0) {
        const [held] = holds.splice(heldIndex, 1)
        await held.promise
      }
      return route(new URL(urlText, 'http://ui.test'), method, body)
    }))

  return api
}

/** lets queued promise callbacks and renders settle */
export async function flush(times = 6): Promise<void> {
  for (let i = 0; i < times; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0))
  }
}
