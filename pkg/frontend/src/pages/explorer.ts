/**
 * Data Explorer: free x/y/color picks over the frame columns, rendered
 * as the scatter + marginal histograms + count heatmap layout.
 */

import { ApiClient, QueryParams } from '../api.js'
import { makeSelect, makeSpan } from '../controls.js'
import { ChartPanel } from '../panels.js'

const COLUMNS: Array<[string, string]> = [
  ['t_db', 'dry bulb (C)'],
  ['rh', 'relative humidity (%)'],
  ['t_dp', 'dew point (C)'],
  ['humidity_ratio', 'humidity ratio (kg/kg)'],
  ['wind_speed', 'wind speed (m/s)'],
  ['ghi', 'GHI (Wh/m2)'],
  ['dni', 'DNI (Wh/m2)'],
  ['utci_sun_wind', 'UTCI sun+wind (C)'],
  ['pressure', 'pressure (Pa)'],
]

export class ExplorerPage {
  readonly el: HTMLElement
  readonly scatter: ChartPanel
  private x = 't_db'
  private y = 'rh'
  private color = 'ghi'
  private months: ReturnType<typeof makeSpan>
  private hours: ReturnType<typeof makeSpan>
  private sessionId: string | null = null

  constructor(api: ApiClient) {
    this.el = document.createElement('div')
    this.el.className = 'page page-explorer'

    const refresh = () => void this.refresh()
    this.months = makeSpan('months', 1, 12, null, refresh)
    this.hours = makeSpan('hours', 1, 24, null, refresh)

    const controls = document.createElement('div')
    controls.className = 'controls'
    controls.append(
      makeSelect('x', COLUMNS, this.x, (v) => {
        this.x = v
        refresh()
      }).el,
      makeSelect('y', COLUMNS, this.y, (v) => {
        this.y = v
        refresh()
      }).el,
      makeSelect('color', COLUMNS, this.color, (v) => {
        this.color = v
        refresh()
      }).el,
      this.months.el,
      this.hours.el,
    )

    this.scatter = new ChartPanel(api, 'explorer_scatter', 'Explorer')
    this.el.append(controls, this.scatter.el)
  }

  activate(sessionId: string): void {
    this.sessionId = sessionId
    void this.refresh()
  }

  private async refresh(): Promise<void> {
    if (!this.sessionId) return
    const params: QueryParams = { variable: this.x, y: this.y, color: this.color }
    const months = this.months.value()
    const hours = this.hours.value()
    if (months) params.months = months
    if (hours) params.hours = hours
    await this.scatter.refresh(this.sessionId, params)
  }
}
