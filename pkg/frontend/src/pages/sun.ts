/**
 * Sun and Clouds: both sun-path projections plus the monthly irradiation
 * breakdown. The color pick tints the sun-path markers by an hourly
 * variable.
 */

import { ApiClient } from '../api.js'
import { makeSelect } from '../controls.js'
import { ChartPanel } from '../panels.js'

const COLOR_OPTIONS: Array<[string, string]> = [
  ['', 'no color'],
  ['t_db', 'dry-bulb temperature'],
  ['ghi', 'global horizontal irradiance'],
  ['dni', 'direct normal irradiance'],
]

export class SunPage {
  readonly el: HTMLElement
  readonly spherical: ChartPanel
  readonly cartesian: ChartPanel
  readonly monthly: ChartPanel
  private color = ''
  private sessionId: string | null = null

  constructor(api: ApiClient) {
    this.el = document.createElement('div')
    this.el.className = 'page page-sun'

    const controls = document.createElement('div')
    controls.className = 'controls'
    controls.append(
      makeSelect('color by', COLOR_OPTIONS, this.color, (v) => {
        this.color = v
        void this.refreshSunPaths()
      }).el,
    )

    this.spherical = new ChartPanel(api, 'sun_path_spherical', 'Sun path (spherical)')
    this.cartesian = new ChartPanel(api, 'sun_path_cartesian', 'Sun path (cartesian)')
    this.monthly = new ChartPanel(api, 'monthly_solar', 'Monthly irradiation')
    this.el.append(controls, this.spherical.el, this.cartesian.el, this.monthly.el)
  }

  activate(sessionId: string): void {
    this.sessionId = sessionId
    void this.refreshSunPaths()
    void this.monthly.refresh(sessionId, {})
  }

  private async refreshSunPaths(): Promise<void> {
    if (!this.sessionId) return
    const params = this.color ? { color: this.color } : {}
    await Promise.all([
      this.spherical.refresh(this.sessionId, params),
      this.cartesian.refresh(this.sessionId, params),
    ])
  }
}
