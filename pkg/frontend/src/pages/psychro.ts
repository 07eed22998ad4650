/**
 * Psychrometric Chart: moist-air states against the saturation curve,
 * either as binned frequencies or colored point clouds.
 */

import { ApiClient } from '../api.js'
import { makeSelect } from '../controls.js'
import { ChartPanel } from '../panels.js'

const COLOR_OPTIONS: Array<[string, string]> = [
  ['', 'bin frequency'],
  ['rh', 'relative humidity'],
  ['wind_speed', 'wind speed'],
  ['utci_sun_wind', 'UTCI (sun, wind)'],
  ['ghi', 'global horizontal irradiance'],
]

export class PsychroPage {
  readonly el: HTMLElement
  readonly chart: ChartPanel
  private color = ''
  private sessionId: string | null = null

  constructor(api: ApiClient) {
    this.el = document.createElement('div')
    this.el.className = 'page page-psychro'

    const controls = document.createElement('div')
    controls.className = 'controls'
    controls.append(
      makeSelect('color by', COLOR_OPTIONS, this.color, (v) => {
        this.color = v
        void this.refresh()
      }).el,
    )

    this.chart = new ChartPanel(api, 'psychrometric', 'Psychrometric chart')
    this.el.append(controls, this.chart.el)
  }

  activate(sessionId: string): void {
    this.sessionId = sessionId
    void this.refresh()
  }

  private async refresh(): Promise<void> {
    if (!this.sessionId) return
    await this.chart.refresh(this.sessionId,
      this.color ? { color: this.color } : {})
  }
}
