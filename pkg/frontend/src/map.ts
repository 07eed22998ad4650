/**
 * Station picker map.
 *
 * Equirectangular projection drawn as inline SVG. By default the backdrop
 * is a built-in graticule (works offline, used by the tests); deployments
 * can point `tileUrl` at a world-image tile server for a real basemap.
 */

import type { StationRow } from './types.js'

const SVG_NS = 'http://www.w3.org/2000/svg'

export interface MapOptions {
  /** URL of a full-world equirectangular image, e.g. a static tile. */
  tileUrl?: string
  onPick: (station: StationRow) => void
}

/** lon/lat degrees -> viewBox coordinates (y grows south). */
export function project(longitude: number, latitude: number): [number, number] {
  return [longitude, 0 - latitude]
}

export class StationMap {
  readonly el: SVGSVGElement
  private markerLayer: SVGGElement

  constructor(private options: MapOptions) {
    this.el = document.createElementNS(SVG_NS, 'svg')
    this.el.setAttribute('viewBox', '-180 -90 360 180')
    this.el.setAttribute('class', 'station-map')
    this.el.setAttribute('role', 'listbox')
    this.el.setAttribute('aria-label', 'weather stations')

    if (options.tileUrl) {
      const image = document.createElementNS(SVG_NS, 'image')
      image.setAttribute('href', options.tileUrl)
      image.setAttribute('x', '-180')
      image.setAttribute('y', '-90')
      image.setAttribute('width', '360')
      image.setAttribute('height', '180')
      this.el.appendChild(image)
    } else {
      this.el.appendChild(this.graticule())
    }

    this.markerLayer = document.createElementNS(SVG_NS, 'g')
    this.el.appendChild(this.markerLayer)
  }

  /** the offline fixture backdrop: frame plus 30-degree graticule */
  private graticule(): SVGGElement {
    const g = document.createElementNS(SVG_NS, 'g')
    g.setAttribute('class', 'graticule')
    const frame = document.createElementNS(SVG_NS, 'rect')
    frame.setAttribute('x', '-180')
    frame.setAttribute('y', '-90')
    frame.setAttribute('width', '360')
    frame.setAttribute('height', '180')
    g.appendChild(frame)
    for (let lon = -150; lon <= 150; lon += 30) {
      const line = document.createElementNS(SVG_NS, 'line')
      line.setAttribute('x1', String(lon))
      line.setAttribute('x2', String(lon))
      line.setAttribute('y1', '-90')
      line.setAttribute('y2', '90')
      g.appendChild(line)
    }
    for (let lat = -60; lat <= 60; lat += 30) {
      const line = document.createElementNS(SVG_NS, 'line')
      line.setAttribute('x1', '-180')
      line.setAttribute('x2', '180')
      line.setAttribute('y1', String(-lat))
      line.setAttribute('y2', String(-lat))
      g.appendChild(line)
    }
    return g
  }

  setStations(stations: StationRow[]): void {
    this.markerLayer.replaceChildren()
    for (const station of stations) {
      const [x, y] = project(station.longitude, station.latitude)
      const marker = document.createElementNS(SVG_NS, 'circle')
      marker.setAttribute('cx', String(x))
      marker.setAttribute('cy', String(y))
      marker.setAttribute('r', '2.5')
      marker.setAttribute('class', 'station-marker')
      marker.setAttribute('role', 'option')
      marker.dataset.stationId = station.station_id
      const tip = document.createElementNS(SVG_NS, 'title')
      tip.textContent = `${station.name}, ${station.country}`
      marker.appendChild(tip)
      marker.addEventListener('click', () => this.options.onPick(station))
      this.markerLayer.appendChild(marker)
    }
  }
}
