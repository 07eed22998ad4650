import { App } from './app.js'

const root = document.getElementById('app')
if (root) {
  const app = new App(root, {
    baseUrl: root.dataset.baseUrl ?? '',
    tileUrl: root.dataset.tileUrl || undefined,
  })
  void app.start()
}
