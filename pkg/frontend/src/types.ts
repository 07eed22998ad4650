/** Shapes of the service's JSON responses (the parts the UI reads). */

export interface Health {
  status: string
  version: string
  stations: number
  sessions: number
}

export interface StationRow {
  station_id: string
  name: string
  country: string
  latitude: number
  longitude: number
  source: string
}

export interface StationPage {
  stations: StationRow[]
  total: number
  page: number
  page_size: number
}

export interface KoppenInfo {
  label: string
  precipitation_missing: boolean
}

export interface Summary {
  location: {
    city: string
    state_region: string
    country: string
    latitude: number
    longitude: number
    elevation: number
    timezone: number
    wmo_id: string
  }
  koppen: KoppenInfo
  t_db_mean: number | null
  hottest_month: string
  hottest_month_mean: number | null
  coldest_month: string
  coldest_month_mean: number | null
  annual_ghi_kwh_m2: number | null
  diffuse_share_pct: number | null
}

export interface SessionInfo {
  session_id: string
  n_records: number
  origin: string
  expires_in_s: number
  summary: Summary
}

export interface DegreeDayResult {
  base_heating: number
  base_cooling: number
  hdd_monthly: number[]
  cdd_monthly: number[]
  hdd_annual: number
  cdd_annual: number
  method: string
}

export interface NatVentResult {
  eligible_hours: number
  total_hours: number
  eligible_pct: number
}

export interface UtciDistribution {
  scenario: string
  categories: string[]
  monthly_pct: number[][]
  annual_pct: number[]
}

/** error envelope: every non-2xx body looks like this */
export interface ApiErrorBody {
  error: {
    code: string
    message: string
    detail?: Record<string, unknown>
  }
}
