/**
 * Outdoor Comfort: UTCI heatmap for one of the four exposure scenarios,
 * with the monthly stress-category distribution underneath.
 */

import { ApiClient, ApiError } from '../api.js'
import { makeSelect } from '../controls.js'
import { ChartPanel } from '../panels.js'
import type { UtciDistribution } from '../types.js'

const SCENARIOS: Array<[string, string]> = [
  ['sun_wind', 'sun + wind'],
  ['sun_nowind', 'sun, calm'],
  ['nosun_wind', 'shade + wind'],
  ['nosun_nowind', 'shade, calm'],
]

const MONTHS = ['Jan', 'Feb', 'Mar', 'Apr', 'May', 'Jun',
  'Jul', 'Aug', 'Sep', 'Oct', 'Nov', 'Dec']

export class ComfortPage {
  readonly el: HTMLElement
  readonly heatmap: ChartPanel
  private scenario = 'sun_wind'
  private table: HTMLElement
  private sessionId: string | null = null

  constructor(private api: ApiClient) {
    this.el = document.createElement('div')
    this.el.className = 'page page-comfort'

    const controls = document.createElement('div')
    controls.className = 'controls'
    controls.append(
      makeSelect('scenario', SCENARIOS, this.scenario, (v) => {
        this.scenario = v
        void this.refresh()
      }).el,
    )

    this.heatmap = new ChartPanel(api, 'heatmap', 'UTCI heatmap')
    this.table = document.createElement('div')
    this.table.className = 'stress-table'

    this.el.append(controls, this.heatmap.el, this.table)
  }

  activate(sessionId: string): void {
    this.sessionId = sessionId
    void this.refresh()
  }

  private async refresh(): Promise<void> {
    if (!this.sessionId) return
    await this.heatmap.refresh(this.sessionId,
      { variable: `utci_${this.scenario}` })
    try {
      const dist = await this.api.analysis<UtciDistribution>(
        this.sessionId, 'utci', { scenario: this.scenario })
      this.renderTable(dist)
    } catch (err) {
      const box = document.createElement('p')
      box.className = 'panel-error'
      box.textContent = err instanceof ApiError ? err.message : 'request failed'
      this.table.replaceChildren(box)
    }
  }

  /** month x category matrix, percentages of classifiable hours */
  private renderTable(dist: UtciDistribution): void {
    const table = document.createElement('table')
    const head = table.createTHead().insertRow()
    head.insertCell().textContent = ''
    for (const category of dist.categories) {
      const cell = document.createElement('th')
      cell.textContent = category
      head.appendChild(cell)
    }
    const body = table.createTBody()
    dist.monthly_pct.forEach((row, m) => {
      const tr = body.insertRow()
      tr.insertCell().textContent = MONTHS[m]
      for (const pct of row) {
        tr.insertCell().textContent = pct === 0 ? '' : pct.toFixed(1)
      }
    })
    this.table.replaceChildren(table)
  }
}
