import { afterEach, describe, expect, it, vi } from 'vitest'

import { ApiClient } from '../src/api.js'
import { ChartPanel } from '../src/panels.js'
import { AppState, Sequencer, TAB_IDS } from '../src/state.js'
import { flush, installFakeApi, SESSION, svgFor } from './helpers.js'

afterEach(() => vi.unstubAllGlobals())

describe('AppState', () => {
  it('gates every non-home tab until a session exists', () => {
    const state = new AppState()
    for (const tab of TAB_IDS) {
      expect(state.tabEnabled(tab)).toBe(tab === 'home')
    }
    state.setTab('wind')
    expect(state.activeTab).toBe('home') // ignored

    state.setSession(SESSION)
    expect(state.activeTab).toBe('summary')
    for (const tab of TAB_IDS) expect(state.tabEnabled(tab)).toBe(true)
    state.setTab('wind')
    expect(state.activeTab).toBe('wind')
  })

  it('notifies subscribers on changes', () => {
    const state = new AppState()
    let calls = 0
    state.subscribe(() => { calls += 1 })
    state.setSession(SESSION)
    state.setTab('explorer')
    expect(calls).toBe(2)
  })
})

describe('Sequencer', () => {
  it('treats only the newest token as current', () => {
    const seq = new Sequencer()
    const first = seq.next()
    const second = seq.next()
    expect(seq.isCurrent(first)).toBe(false)
    expect(seq.isCurrent(second)).toBe(true)
  })
})

describe('last-write-wins rendering', () => {
  it('drops a stale chart response that lands after a newer one', async () => {
    const fake = installFakeApi()
    const panel = new ChartPanel(new ApiClient(''), 'heatmap', 'Heatmap')

    // hold the first request open while a second supersedes it
    const releaseFirst = fake.holdNext('variable=t_db')
    const stale = panel.refresh('sess01', { variable: 't_db' })
    const fresh = panel.refresh('sess01', { variable: 'rh' })
    await fresh
    releaseFirst()
    await stale
    await flush()

    expect(panel.currentSvg).toBe(
      svgFor('/api/sessions/sess01/charts/heatmap.svg', 'variable=rh'))
    expect(panel.el.querySelector('svg')?.getAttribute('data-query'))
      .toBe('variable=rh')
    expect(panel.requestCount).toBe(2)
  })
})
