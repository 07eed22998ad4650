/**
 * Application shell: wires the state store, tab bar, and the nine pages
 * to one ApiClient. Kept separate from main.ts so tests can mount the
 * whole app against a fake fetch.
 */

import { ApiClient } from './api.js'
import { AppState, TabId } from './state.js'
import { TabBar } from './tabs.js'
import { HomePage } from './pages/home.js'
import { SummaryPage } from './pages/summary.js'
import { TemperaturePage } from './pages/temperature.js'
import { SunPage } from './pages/sun.js'
import { WindPage } from './pages/wind.js'
import { PsychroPage } from './pages/psychro.js'
import { NatVentPage } from './pages/natvent.js'
import { ComfortPage } from './pages/comfort.js'
import { ExplorerPage } from './pages/explorer.js'

export interface AppOptions {
  baseUrl?: string
  tileUrl?: string
}

export class App {
  readonly state = new AppState()
  readonly api: ApiClient
  readonly home: HomePage
  readonly summary: SummaryPage
  readonly temperature: TemperaturePage
  readonly sun: SunPage
  readonly wind: WindPage
  readonly psychro: PsychroPage
  readonly natvent: NatVentPage
  readonly comfort: ComfortPage
  readonly explorer: ExplorerPage
  private pages: Map<TabId, HTMLElement>
  private stage: HTMLElement
  private banner: HTMLElement

  constructor(readonly root: HTMLElement, options: AppOptions = {}) {
    this.api = new ApiClient(options.baseUrl ?? '')

    const onSession = (session: Parameters<AppState['setSession']>[0]) =>
      this.state.setSession(session)

    this.home = new HomePage(this.api, onSession, options.tileUrl)
    this.summary = new SummaryPage(this.api)
    this.temperature = new TemperaturePage(this.api)
    this.sun = new SunPage(this.api)
    this.wind = new WindPage(this.api)
    this.psychro = new PsychroPage(this.api)
    this.natvent = new NatVentPage(this.api)
    this.comfort = new ComfortPage(this.api)
    this.explorer = new ExplorerPage(this.api)

    this.pages = new Map<TabId, HTMLElement>([
      ['home', this.home.el],
      ['summary', this.summary.el],
      ['temperature', this.temperature.el],
      ['sun', this.sun.el],
      ['wind', this.wind.el],
      ['psychrometric', this.psychro.el],
      ['natvent', this.natvent.el],
      ['comfort', this.comfort.el],
      ['explorer', this.explorer.el],
    ])

    const tabs = new TabBar(this.state)
    this.banner = document.createElement('p')
    this.banner.className = 'session-banner'
    this.stage = document.createElement('main')

    root.append(tabs.el, this.banner, this.stage)
    this.state.subscribe(() => this.sync())
    this.sync()
  }

  /** boots the map; separate so tests can await it */
  start(): Promise<void> {
    return this.home.loadStations()
  }

  private lastShown: { tab: TabId; session: string | null } | null = null

  private sync(): void {
    const session = this.state.session
    this.banner.textContent = session
      ? `${session.summary.location.city} (${session.origin}, ${session.n_records} records)`
      : 'no file loaded'

    const tab = this.state.activeTab
    const key = { tab, session: session ? session.session_id : null }
    const el = this.pages.get(tab)!
    this.stage.replaceChildren(el)

    // fire the page's requests when it comes into view or the file changed
    const changed = !this.lastShown ||
      this.lastShown.tab !== key.tab || this.lastShown.session !== key.session
    this.lastShown = key
    if (!changed || !session) return

    switch (tab) {
      case 'summary':
        this.summary.activate(session.session_id, session.summary)
        break
      case 'temperature':
        this.temperature.activate(session.session_id)
        break
      case 'sun':
        this.sun.activate(session.session_id)
        break
      case 'wind':
        this.wind.activate(session.session_id)
        break
      case 'psychrometric':
        this.psychro.activate(session.session_id)
        break
      case 'natvent':
        this.natvent.activate(session.session_id)
        break
      case 'comfort':
        this.comfort.activate(session.session_id)
        break
      case 'explorer':
        this.explorer.activate(session.session_id)
        break
    }
  }
}
