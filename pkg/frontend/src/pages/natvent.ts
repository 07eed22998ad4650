/**
 * Natural Ventilation: how many hours of the selected period fall inside
 * the chosen dry-bulb band, with an optional condensation guard on a
 * radiant surface temperature. Pure readout page; the numbers come from
 * /analysis/natural_ventilation and nowhere else.
 */

import { ApiClient, ApiError, QueryParams } from '../api.js'
import { makeCheckbox, makeNumber, makeSpan } from '../controls.js'
import type { NatVentResult } from '../types.js'

export class NatVentPage {
  readonly el: HTMLElement
  private tMin = 12
  private tMax = 26
  private radiantOn = false
  private radiantT = 15
  private months: ReturnType<typeof makeSpan>
  private hours: ReturnType<typeof makeSpan>
  private readout: HTMLElement
  private sessionId: string | null = null
  /** for the request-count tests */
  requestCount = 0

  constructor(private api: ApiClient) {
    this.el = document.createElement('div')
    this.el.className = 'page page-natvent'

    const refresh = () => void this.refresh()
    this.months = makeSpan('months', 1, 12, null, refresh)
    this.hours = makeSpan('hours', 1, 24, null, refresh)

    const controls = document.createElement('div')
    controls.className = 'controls'
    controls.append(
      makeNumber('lower dry bulb (C)', this.tMin, (v) => {
        this.tMin = v
        refresh()
      }).el,
      makeNumber('upper dry bulb (C)', this.tMax, (v) => {
        this.tMax = v
        refresh()
      }).el,
      this.months.el,
      this.hours.el,
      makeCheckbox('condensation guard', this.radiantOn, (on) => {
        this.radiantOn = on
        refresh()
      }).el,
      makeNumber('radiant surface (C)', this.radiantT, (v) => {
        this.radiantT = v
        if (this.radiantOn) refresh()
      }).el,
    )

    this.readout = document.createElement('div')
    this.readout.className = 'natvent-readout'

    this.el.append(controls, this.readout)
  }

  activate(sessionId: string): void {
    this.sessionId = sessionId
    void this.refresh()
  }

  private async refresh(): Promise<void> {
    if (!this.sessionId) return
    const params: QueryParams = { t_min: this.tMin, t_max: this.tMax }
    const months = this.months.value()
    const hours = this.hours.value()
    if (months) params.months = months
    if (hours) params.hours = hours
    if (this.radiantOn) params.radiant_t = this.radiantT

    this.requestCount += 1
    try {
      const result = await this.api.analysis<NatVentResult>(
        this.sessionId, 'natural_ventilation', params)
      this.renderResult(result)
    } catch (err) {
      const box = document.createElement('p')
      box.className = 'panel-error'
      box.textContent = err instanceof ApiError ? err.message : 'request failed'
      this.readout.replaceChildren(box)
    }
  }

  private renderResult(result: NatVentResult): void {
    const big = document.createElement('p')
    big.className = 'big-number'
    big.textContent = `${result.eligible_pct.toFixed(1)} %`
    const caption = document.createElement('p')
    caption.textContent =
      `${result.eligible_hours} of ${result.total_hours} hours suit natural ventilation`
    this.readout.replaceChildren(big, caption)
  }
}
