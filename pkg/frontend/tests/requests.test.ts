/**
 * The request-per-change contract: each control change issues exactly one
 * request per panel it owns, and nothing else fires in the background.
 */

import { afterEach, describe, expect, it, vi } from 'vitest'

import { ApiClient } from '../src/api.js'
import { ComfortPage } from '../src/pages/comfort.js'
import { ExplorerPage } from '../src/pages/explorer.js'
import { NatVentPage } from '../src/pages/natvent.js'
import { PsychroPage } from '../src/pages/psychro.js'
import { TemperaturePage } from '../src/pages/temperature.js'
import { WindPage } from '../src/pages/wind.js'
import { flush, installFakeApi, FakeApi } from './helpers.js'

afterEach(() => vi.unstubAllGlobals())

function changeSelect(rootEl: HTMLElement, label: string, value: string): void {
  for (const control of rootEl.querySelectorAll('label.control')) {
    if (control.querySelector('span')?.textContent === label) {
      const select = control.querySelector('select') as HTMLSelectElement
      select.value = value
      select.dispatchEvent(new Event('change'))
      return
    }
  }
  throw new Error(`no select labeled ${label}`)
}

function changeNumber(rootEl: HTMLElement, label: string, value: number): void {
  for (const control of rootEl.querySelectorAll('label.control')) {
    if (control.querySelector('span')?.textContent === label) {
      const input = control.querySelector('input') as HTMLInputElement
      input.value = String(value)
      input.dispatchEvent(new Event('change'))
      return
    }
  }
  throw new Error(`no input labeled ${label}`)
}

async function settle(fake: FakeApi): Promise<number> {
  await flush()
  return fake.requests.length
}

describe('one request per affected panel per change', () => {
  it('natural ventilation: slider change fires exactly one analysis request', async () => {
    const fake = installFakeApi()
    const page = new NatVentPage(new ApiClient(''))
    document.body.replaceChildren(page.el)
    page.activate('sess01')
    const before = await settle(fake)

    changeNumber(page.el, 'lower dry bulb (C)', 14)
    await flush()
    expect(fake.requests.length).toBe(before + 1)
    const last = fake.requests.at(-1)!
    expect(last.url).toContain('/analysis/natural_ventilation')
    expect(last.url).toContain('t_min=14')

    // and the readout matches the response
    expect(page.el.querySelector('.big-number')?.textContent).toBe('43.2 %')
    expect(page.el.textContent).toContain('3783 of 8760 hours')
  })

  it('wind: month span change refetches only the rose', async () => {
    const fake = installFakeApi()
    const page = new WindPage(new ApiClient(''))
    document.body.replaceChildren(page.el)
    page.activate('sess01')
    const before = await settle(fake)

    // enable the months span (uncheck "all"), one change -> one request
    const span = page.el.querySelector('.control.span') as HTMLElement
    const all = span.querySelector('input[type=checkbox]') as HTMLInputElement
    all.checked = false
    all.dispatchEvent(new Event('change'))
    await flush()

    expect(fake.requests.length).toBe(before + 1)
    const last = fake.requests.at(-1)!
    expect(last.url).toContain('/charts/wind_rose.svg')
    expect(last.url).toContain('months=1-12')
  })

  it('temperature: variable change refetches each chart exactly once', async () => {
    const fake = installFakeApi()
    const page = new TemperaturePage(new ApiClient(''))
    document.body.replaceChildren(page.el)
    page.activate('sess01')
    const before = await settle(fake)

    changeSelect(page.el, 'variable', 'rh')
    await flush()
    const after = fake.requests.slice(before)
    expect(after).toHaveLength(3)
    expect(new Set(after.map((r) => r.url.split('?')[0]))).toEqual(new Set([
      '/api/sessions/sess01/charts/heatmap.svg',
      '/api/sessions/sess01/charts/yearly_range.svg',
      '/api/sessions/sess01/charts/daily_profiles.svg',
    ]))
    for (const req of after) expect(req.url).toContain('variable=rh')
  })

  it('temperature: global/local toggle resends with the new range mode', async () => {
    const fake = installFakeApi()
    const page = new TemperaturePage(new ApiClient(''))
    document.body.replaceChildren(page.el)
    page.activate('sess01')
    const before = await settle(fake)

    const global = page.el.querySelector(
      'input[type=radio][value=global]') as HTMLInputElement
    global.checked = true
    global.dispatchEvent(new Event('change'))
    await flush()

    const after = fake.requests.slice(before)
    expect(after).toHaveLength(3)
    for (const req of after) expect(req.url).toContain('range=global')
  })

  it('psychrometric: color pick fires exactly one chart request', async () => {
    const fake = installFakeApi()
    const page = new PsychroPage(new ApiClient(''))
    document.body.replaceChildren(page.el)
    page.activate('sess01')
    const before = await settle(fake)

    changeSelect(page.el, 'color by', 'rh')
    await flush()
    expect(fake.requests.length).toBe(before + 1)
    expect(fake.requests.at(-1)!.url)
      .toBe('/api/sessions/sess01/charts/psychrometric.svg?color=rh')
  })

  it('comfort: scenario change refreshes the heatmap and the table once each', async () => {
    const fake = installFakeApi()
    const page = new ComfortPage(new ApiClient(''))
    document.body.replaceChildren(page.el)
    page.activate('sess01')
    const before = await settle(fake)

    changeSelect(page.el, 'scenario', 'nosun_wind')
    await flush()
    const after = fake.requests.slice(before)
    expect(after).toHaveLength(2)
    expect(after[0].url).toContain('variable=utci_nosun_wind')
    expect(after[1].url).toContain('/analysis/utci')
    expect(after[1].url).toContain('scenario=nosun_wind')
  })

  it('explorer: an axis pick fires exactly one scatter request', async () => {
    const fake = installFakeApi()
    const page = new ExplorerPage(new ApiClient(''))
    document.body.replaceChildren(page.el)
    page.activate('sess01')
    const before = await settle(fake)

    changeSelect(page.el, 'x', 'wind_speed')
    await flush()
    expect(fake.requests.length).toBe(before + 1)
    const url = fake.requests.at(-1)!.url
    expect(url).toContain('/charts/explorer_scatter.svg')
    expect(url).toContain('variable=wind_speed')
    expect(url).toContain('y=rh')
    expect(url).toContain('color=ghi')
  })
})
