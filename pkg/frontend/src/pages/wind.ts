/**
 * Wind: the 16-sector rose, filterable by month and hour spans, with the
 * wrap-capable span syntax shared with the CLI (11-2 is Nov through Feb).
 */

import { ApiClient, QueryParams } from '../api.js'
import { makeSpan } from '../controls.js'
import { ChartPanel } from '../panels.js'

export class WindPage {
  readonly el: HTMLElement
  readonly rose: ChartPanel
  private months: ReturnType<typeof makeSpan>
  private hours: ReturnType<typeof makeSpan>
  private sessionId: string | null = null

  constructor(api: ApiClient) {
    this.el = document.createElement('div')
    this.el.className = 'page page-wind'

    this.months = makeSpan('months', 1, 12, null, () => void this.refresh())
    this.hours = makeSpan('hours', 1, 24, null, () => void this.refresh())

    const controls = document.createElement('div')
    controls.className = 'controls'
    controls.append(this.months.el, this.hours.el)

    this.rose = new ChartPanel(api, 'wind_rose', 'Wind rose')
    this.el.append(controls, this.rose.el)
  }

  activate(sessionId: string): void {
    this.sessionId = sessionId
    void this.refresh()
  }

  private async refresh(): Promise<void> {
    if (!this.sessionId) return
    const params: QueryParams = {}
    const months = this.months.value()
    const hours = this.hours.value()
    if (months) params.months = months
    if (hours) params.hours = hours
    await this.rose.refresh(this.sessionId, params)
  }
}
