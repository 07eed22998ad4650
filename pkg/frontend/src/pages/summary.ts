/**
 * Climate Summary: headline figures from /analysis/summary, the degree-day
 * chart with adjustable bases, and the raw-data downloads.
 */

import { ApiClient, ApiError } from '../api.js'
import { makeNumber } from '../controls.js'
import { ChartPanel, downloadButton } from '../panels.js'
import type { DegreeDayResult, Summary } from '../types.js'

function fmt(value: number | null, unit: string): string {
  return value === null ? 'n/a' : `${value.toFixed(1)} ${unit}`
}

export class SummaryPage {
  readonly el: HTMLElement
  readonly degreeDays: ChartPanel
  private figures: HTMLElement
  private ddReadout: HTMLElement
  private baseHeating = 18
  private baseCooling = 21
  private sessionId: string | null = null

  constructor(private api: ApiClient) {
    this.el = document.createElement('div')
    this.el.className = 'page page-summary'

    this.figures = document.createElement('dl')
    this.figures.className = 'summary-figures'

    const controls = document.createElement('div')
    controls.className = 'controls'
    controls.append(
      makeNumber('heating base (C)', this.baseHeating, (v) => {
        this.baseHeating = v
        void this.refreshDegreeDays()
      }).el,
      makeNumber('cooling base (C)', this.baseCooling, (v) => {
        this.baseCooling = v
        void this.refreshDegreeDays()
      }).el,
    )

    this.degreeDays = new ChartPanel(api, 'degree_days', 'Degree days')
    this.ddReadout = document.createElement('p')
    this.ddReadout.className = 'readout'

    const exports = document.createElement('div')
    exports.className = 'exports'
    exports.append(
      downloadButton(api, 'Download frame CSV',
        () => api.frameCsvUrl(this.sessionId ?? ''), 'frame.csv', 'text/csv'),
      downloadButton(api, 'Download EPW',
        () => api.epwUrl(this.sessionId ?? ''), 'weather.epw', 'text/plain'),
    )

    this.el.append(this.figures, controls, this.degreeDays.el,
      this.ddReadout, exports)
  }

  renderSummary(summary: Summary): void {
    const loc = summary.location
    const entries: Array<[string, string]> = [
      ['Location', `${loc.city}, ${loc.country} (WMO ${loc.wmo_id})`],
      ['Coordinates', `${loc.latitude}, ${loc.longitude}, ${loc.elevation} m`],
      ['Koppen-Geiger', summary.koppen.label +
        (summary.koppen.precipitation_missing ? ' (no precipitation data)' : '')],
      ['Mean dry bulb', fmt(summary.t_db_mean, 'C')],
      ['Hottest month', `${summary.hottest_month} (${fmt(summary.hottest_month_mean, 'C')})`],
      ['Coldest month', `${summary.coldest_month} (${fmt(summary.coldest_month_mean, 'C')})`],
      ['Annual GHI', fmt(summary.annual_ghi_kwh_m2, 'kWh/m2')],
      ['Diffuse share', fmt(summary.diffuse_share_pct, '%')],
    ]
    this.figures.replaceChildren()
    for (const [term, detail] of entries) {
      const dt = document.createElement('dt')
      dt.textContent = term
      const dd = document.createElement('dd')
      dd.textContent = detail
      this.figures.append(dt, dd)
    }
  }

  activate(sessionId: string, summary: Summary): void {
    this.sessionId = sessionId
    this.renderSummary(summary)
    void this.refreshDegreeDays()
  }

  private async refreshDegreeDays(): Promise<void> {
    if (!this.sessionId) return
    const params = {
      base_heating: this.baseHeating,
      base_cooling: this.baseCooling,
    }
    await this.degreeDays.refresh(this.sessionId, params)
    try {
      const dd = await this.api.analysis<DegreeDayResult>(
        this.sessionId, 'degree_days', params)
      this.ddReadout.textContent =
        `HDD ${dd.hdd_annual.toFixed(0)} K·day, CDD ${dd.cdd_annual.toFixed(0)} K·day`
    } catch (err) {
      this.ddReadout.textContent =
        err instanceof ApiError ? err.message : 'degree-day request failed'
    }
  }
}
