/**
 * Landing page: the interactive station map, a text search over the
 * catalog, and the upload widget.
 */

import { ApiClient, ApiError } from '../api.js'
import { StationMap } from '../map.js'
import { UploadWidget } from '../upload.js'
import type { SessionInfo, StationRow } from '../types.js'

export class HomePage {
  readonly el: HTMLElement
  readonly map: StationMap
  readonly upload: UploadWidget
  private status: HTMLElement
  private search: HTMLInputElement

  constructor(
    private api: ApiClient,
    onSession: (session: SessionInfo) => void,
    tileUrl?: string,
  ) {
    this.el = document.createElement('div')
    this.el.className = 'page page-home'

    const intro = document.createElement('p')
    intro.textContent =
      'Pick a weather station on the map, search the catalog, or upload your own EPW file.'

    this.search = document.createElement('input')
    this.search.type = 'search'
    this.search.placeholder = 'search stations'
    this.search.addEventListener('change', () => void this.loadStations())

    this.map = new StationMap({
      tileUrl,
      onPick: (station) => void this.openStation(station),
    })

    this.upload = new UploadWidget(this.api, onSession)
    this.status = document.createElement('p')
    this.status.className = 'map-status'

    this.el.append(intro, this.search, this.map.el as unknown as Element,
      this.status, this.upload.el)
    this.onSession = onSession
  }

  private onSession: (session: SessionInfo) => void

  /** fills the map; called once at boot and again per search */
  async loadStations(): Promise<void> {
    try {
      const page = await this.api.stations({
        q: this.search.value || undefined,
        page_size: 500,
      })
      this.map.setStations(page.stations)
      this.status.textContent = `${page.total} station(s)`
    } catch (err) {
      this.status.textContent = err instanceof ApiError
        ? `Station catalog unavailable: ${err.message}`
        : 'Station catalog unavailable.'
      this.map.setStations([])
    }
  }

  private async openStation(station: StationRow): Promise<void> {
    this.upload.hideError()
    this.status.textContent = `loading ${station.name}...`
    try {
      const session = await this.api.createSessionFromStation(station.station_id)
      this.status.textContent = ''
      this.onSession(session)
    } catch (err) {
      this.status.textContent = ''
      this.upload.showError(err instanceof ApiError
        ? err.message
        : 'Could not open the station.')
    }
  }
}
