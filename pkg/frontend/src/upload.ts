/**
 * EPW upload widget. Light client-side guard only; the server is the
 * source of truth for format validation, and its error messages are
 * shown to the user verbatim.
 */

import { ApiClient, ApiError } from './api.js'
import type { SessionInfo } from './types.js'

// matches the service's default CLIMA_MAX_UPLOAD_MB
const MAX_UPLOAD_BYTES = 20 * 1024 * 1024

export function validateBeforeUpload(file: { size: number }): string | null {
  if (file.size === 0) return 'File is empty.'
  if (file.size > MAX_UPLOAD_BYTES) {
    const mb = (file.size / (1024 * 1024)).toFixed(1)
    return `File is too large (${mb} MB); the server accepts up to 20 MB.`
  }
  return null
}

export class UploadWidget {
  readonly el: HTMLElement
  private banner: HTMLElement
  private input: HTMLInputElement

  constructor(
    private api: ApiClient,
    private onSession: (session: SessionInfo) => void,
  ) {
    this.el = document.createElement('div')
    this.el.className = 'upload'

    const label = document.createElement('label')
    label.textContent = 'or upload an EPW file: '
    this.input = document.createElement('input')
    this.input.type = 'file'
    this.input.accept = '.epw,text/plain'
    this.input.addEventListener('change', () => void this.submit())
    label.appendChild(this.input)

    this.banner = document.createElement('p')
    this.banner.className = 'error-banner'
    this.banner.hidden = true

    this.el.append(label, this.banner)
  }

  private async submit(): Promise<void> {
    const file = this.input.files && this.input.files[0]
    if (!file) return
    this.hideError()

    const guard = validateBeforeUpload(file)
    if (guard) {
      this.showError(guard)
      return
    }

    try {
      const text = await file.text()
      const session = await this.api.uploadEpw(text)
      this.onSession(session)
    } catch (err) {
      this.showError(err instanceof ApiError
        ? err.message
        : 'Upload failed. Is the server reachable?')
    } finally {
      this.input.value = ''
    }
  }

  showError(message: string): void {
    this.banner.textContent = message
    this.banner.hidden = false
  }

  hideError(): void {
    this.banner.hidden = true
    this.banner.textContent = ''
  }
}
