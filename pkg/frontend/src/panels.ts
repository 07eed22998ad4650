/**
 * Chart panel: fetches a server-rendered SVG, inlines it, and offers a
 * download of the same bytes. Errors render inside the panel so one bad
 * request never takes down the rest of the page.
 */

import { ApiClient, ApiError, QueryParams } from './api.js'
import { Sequencer } from './state.js'

export class ChartPanel {
  readonly el: HTMLElement
  private body: HTMLElement
  private seq = new Sequencer()
  private lastUrl: string | null = null
  private lastSvg: string | null = null
  /** incremented per fetch so tests can count requests */
  requestCount = 0

  constructor(
    private api: ApiClient,
    private kind: string,
    title: string,
  ) {
    this.el = document.createElement('section')
    this.el.className = 'panel'
    this.el.dataset.kind = kind

    const head = document.createElement('header')
    const heading = document.createElement('h3')
    heading.textContent = title
    const download = document.createElement('button')
    download.type = 'button'
    download.textContent = 'Download SVG'
    download.className = 'download'
    download.addEventListener('click', () => void this.download())
    head.append(heading, download)

    this.body = document.createElement('div')
    this.body.className = 'panel-body'
    this.el.append(head, this.body)
  }

  /** One call = one HTTP request; stale responses are dropped. */
  async refresh(sessionId: string, params: QueryParams): Promise<void> {
    const token = this.seq.next()
    const url = this.api.chartUrl(sessionId, this.kind, params)
    this.el.classList.add('loading')
    this.requestCount += 1
    try {
      const svg = await this.api.fetchText(url)
      if (!this.seq.isCurrent(token)) return
      this.lastUrl = url
      this.lastSvg = svg
      this.body.innerHTML = svg
    } catch (err) {
      if (!this.seq.isCurrent(token)) return
      this.lastUrl = null
      this.lastSvg = null
      this.renderError(err)
    } finally {
      if (this.seq.isCurrent(token)) this.el.classList.remove('loading')
    }
  }

  private renderError(err: unknown): void {
    const box = document.createElement('p')
    box.className = 'panel-error'
    box.textContent = err instanceof ApiError
      ? err.message
      : 'Request failed. Is the server reachable?'
    this.body.replaceChildren(box)
  }

  /**
   * Re-downloads from the URL the display used, so the saved file is
   * byte-identical to a direct API fetch of that URL.
   */
  async download(): Promise<string | null> {
    if (!this.lastUrl) return null
    const svg = await this.api.fetchText(this.lastUrl)
    saveTextAs(svg, `${this.kind}.svg`, 'image/svg+xml')
    return svg
  }

  /** Displayed markup, for tests and the overlay. */
  get currentSvg(): string | null {
    return this.lastSvg
  }

  get currentUrl(): string | null {
    return this.lastUrl
  }
}

export function saveTextAs(text: string, filename: string, mime: string): void {
  const blob = new Blob([text], { type: mime })
  const href = URL.createObjectURL(blob)
  const anchor = document.createElement('a')
  anchor.href = href
  anchor.download = filename
  document.body.appendChild(anchor)
  anchor.click()
  anchor.remove()
  URL.revokeObjectURL(href)
}

/** A plain download button for the CSV / EPW exports. */
export function downloadButton(
  api: ApiClient,
  label: string,
  url: () => string,
  filename: string,
  mime: string,
): HTMLButtonElement {
  const button = document.createElement('button')
  button.type = 'button'
  button.className = 'download'
  button.textContent = label
  button.addEventListener('click', () => {
    void api.fetchText(url()).then((text) => saveTextAs(text, filename, mime))
  })
  return button
}
