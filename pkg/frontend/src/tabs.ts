/** Tab bar. Non-home tabs stay disabled until a session exists. */

import { AppState, TAB_IDS, TAB_TITLES, TabId } from './state.js'

export class TabBar {
  readonly el: HTMLElement
  private buttons = new Map<TabId, HTMLButtonElement>()

  constructor(private state: AppState) {
    this.el = document.createElement('nav')
    this.el.className = 'tabs'
    for (const id of TAB_IDS) {
      const button = document.createElement('button')
      button.type = 'button'
      button.textContent = TAB_TITLES[id]
      button.dataset.tab = id
      button.addEventListener('click', () => state.setTab(id))
      this.buttons.set(id, button)
      this.el.appendChild(button)
    }
    state.subscribe(() => this.sync())
    this.sync()
  }

  private sync(): void {
    for (const [id, button] of this.buttons) {
      button.disabled = !this.state.tabEnabled(id)
      button.classList.toggle('active', this.state.activeTab === id)
    }
  }
}
