/** Application state: one session, one active tab, per-panel sequencing. */

import type { SessionInfo } from './types.js'

export const TAB_IDS = [
  'home',
  'summary',
  'temperature',
  'sun',
  'wind',
  'psychrometric',
  'natvent',
  'comfort',
  'explorer',
] as const

export type TabId = (typeof TAB_IDS)[number]

export const TAB_TITLES: Record<TabId, string> = {
  home: 'Home',
  summary: 'Climate Summary',
  temperature: 'Temperature and Humidity',
  sun: 'Sun and Clouds',
  wind: 'Wind',
  psychrometric: 'Psychrometric Chart',
  natvent: 'Natural Ventilation',
  comfort: 'Outdoor Comfort',
  explorer: 'Data Explorer',
}

type Listener = () => void

export class AppState {
  session: SessionInfo | null = null
  activeTab: TabId = 'home'
  private listeners: Listener[] = []

  subscribe(fn: Listener): void {
    this.listeners.push(fn)
  }

  private emit(): void {
    for (const fn of this.listeners) fn()
  }

  setSession(session: SessionInfo): void {
    this.session = session
    // a fresh file lands the user on the summary, like the original flow
    this.activeTab = 'summary'
    this.emit()
  }

  setTab(tab: TabId): void {
    if (tab !== 'home' && !this.session) return // gated until a session exists
    this.activeTab = tab
    this.emit()
  }

  tabEnabled(tab: TabId): boolean {
    return tab === 'home' || this.session !== null
  }
}

/**
 * Last-write-wins guard for a panel with concurrent requests in flight:
 * only the response matching the newest token may render.
 */
export class Sequencer {
  private current = 0

  next(): number {
    this.current += 1
    return this.current
  }

  isCurrent(token: number): boolean {
    return token === this.current
  }
}
