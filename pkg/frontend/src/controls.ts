/**
 * Form controls that fire their onChange exactly once per user change.
 * Pages wire each control to the panel(s) it owns; the change handler is
 * the only place a request is started from.
 */

export interface Labeled<T extends HTMLElement> {
  el: HTMLElement
  input: T
}

function wrap<T extends HTMLElement>(label: string, input: T): Labeled<T> {
  const holder = document.createElement('label')
  holder.className = 'control'
  const caption = document.createElement('span')
  caption.textContent = label
  holder.append(caption, input)
  return { el: holder, input }
}

export function makeSelect(
  label: string,
  options: Array<[value: string, text: string]>,
  initial: string,
  onChange: (value: string) => void,
): Labeled<HTMLSelectElement> {
  const select = document.createElement('select')
  for (const [value, text] of options) {
    const opt = document.createElement('option')
    opt.value = value
    opt.textContent = text
    select.appendChild(opt)
  }
  select.value = initial
  select.addEventListener('change', () => onChange(select.value))
  return wrap(label, select)
}

export function makeNumber(
  label: string,
  initial: number,
  onChange: (value: number) => void,
  attrs: { min?: number; max?: number; step?: number } = {},
): Labeled<HTMLInputElement> {
  const input = document.createElement('input')
  input.type = 'number'
  if (attrs.min !== undefined) input.min = String(attrs.min)
  if (attrs.max !== undefined) input.max = String(attrs.max)
  input.step = String(attrs.step ?? 0.5)
  input.value = String(initial)
  input.addEventListener('change', () => {
    const v = Number(input.value)
    if (Number.isFinite(v)) onChange(v)
  })
  return wrap(label, input)
}

export function makeCheckbox(
  label: string,
  initial: boolean,
  onChange: (checked: boolean) => void,
): Labeled<HTMLInputElement> {
  const input = document.createElement('input')
  input.type = 'checkbox'
  input.checked = initial
  input.addEventListener('change', () => onChange(input.checked))
  return wrap(label, input)
}

/** Two-value radio, used for the global/local range mode. */
export function makeRadio(
  name: string,
  options: Array<[value: string, text: string]>,
  initial: string,
  onChange: (value: string) => void,
): { el: HTMLElement; value: () => string } {
  const holder = document.createElement('fieldset')
  holder.className = 'control radio'
  let current = initial
  for (const [value, text] of options) {
    const label = document.createElement('label')
    const input = document.createElement('input')
    input.type = 'radio'
    input.name = name
    input.value = value
    input.checked = value === initial
    input.addEventListener('change', () => {
      if (input.checked && value !== current) {
        current = value
        onChange(value)
      }
    })
    const caption = document.createElement('span')
    caption.textContent = text
    label.append(input, caption)
    holder.appendChild(label)
  }
  return { el: holder, value: () => current }
}

/**
 * A wrap-capable span like the API's 'a-b' filters: two selects for the
 * endpoints, one change event per adjusted endpoint.
 */
export function makeSpan(
  label: string,
  lo: number,
  hi: number,
  initial: [number, number] | null,
  onChange: (span: string | undefined) => void,
): { el: HTMLElement; value: () => string | undefined } {
  const holder = document.createElement('div')
  holder.className = 'control span'
  const caption = document.createElement('span')
  caption.textContent = label

  const all = document.createElement('input')
  all.type = 'checkbox'
  all.checked = initial === null

  const mk = (v: number) => {
    const select = document.createElement('select')
    for (let i = lo; i <= hi; i++) {
      const opt = document.createElement('option')
      opt.value = String(i)
      opt.textContent = String(i)
      select.appendChild(opt)
    }
    select.value = String(v)
    return select
  }
  const from = mk(initial ? initial[0] : lo)
  const to = mk(initial ? initial[1] : hi)

  const value = () => (all.checked ? undefined : `${from.value}-${to.value}`)
  const fire = () => onChange(value())
  from.addEventListener('change', fire)
  to.addEventListener('change', fire)
  all.addEventListener('change', () => {
    from.disabled = to.disabled = all.checked
    fire()
  })
  from.disabled = to.disabled = all.checked

  const allLabel = document.createElement('label')
  const allCaption = document.createElement('span')
  allCaption.textContent = 'all'
  allLabel.append(all, allCaption)
  holder.append(caption, from, document.createTextNode('–'), to, allLabel)
  return { el: holder, value }
}
