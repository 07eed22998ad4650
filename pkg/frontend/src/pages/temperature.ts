/**
 * Temperature and Humidity: annual heatmap, yearly range with the
 * adaptive-comfort band, and average daily profiles, for one variable at
 * a time. The global/local radio switches every chart between Earth-wide
 * and data-driven axis ranges.
 */

import { ApiClient } from '../api.js'
import { makeRadio, makeSelect } from '../controls.js'
import { ChartPanel } from '../panels.js'

const VARIABLES: Array<[string, string]> = [
  ['t_db', 'Dry-bulb temperature'],
  ['rh', 'Relative humidity'],
  ['t_dp', 'Dew point'],
  ['t_wb', 'Wet bulb'],
  ['humidity_ratio', 'Humidity ratio'],
]

export class TemperaturePage {
  readonly el: HTMLElement
  readonly panels: ChartPanel[]
  private variable = 't_db'
  private rangeMode = 'local'
  private sessionId: string | null = null

  constructor(api: ApiClient) {
    this.el = document.createElement('div')
    this.el.className = 'page page-temperature'

    const controls = document.createElement('div')
    controls.className = 'controls'
    controls.append(
      makeSelect('variable', VARIABLES, this.variable, (v) => {
        this.variable = v
        void this.refreshAll()
      }).el,
      makeRadio('range-temperature',
        [['local', 'local range'], ['global', 'global range']],
        this.rangeMode, (v) => {
          this.rangeMode = v
          void this.refreshAll()
        }).el,
    )

    this.panels = [
      new ChartPanel(api, 'heatmap', 'Hourly heatmap'),
      new ChartPanel(api, 'yearly_range', 'Yearly range'),
      new ChartPanel(api, 'daily_profiles', 'Daily profiles by month'),
    ]
    this.el.append(controls, ...this.panels.map((p) => p.el))
  }

  activate(sessionId: string): void {
    this.sessionId = sessionId
    void this.refreshAll()
  }

  /** one request per chart, nothing else */
  private async refreshAll(): Promise<void> {
    if (!this.sessionId) return
    const params = { variable: this.variable, range: this.rangeMode }
    await Promise.all(this.panels.map((p) => p.refresh(this.sessionId!, params)))
  }
}
