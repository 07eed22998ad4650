"""Minimal deterministic SVG document builder.

Every number goes through one fixed 6-significant-digit formatter, attribute
order is the call order, and the only dynamic content is what the caller
writes, so identical draw calls produce identical bytes on any platform.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

__all__ = ["SvgDocument", "Svg", "fmt", "escape", "request_hash"]

LICENSE_TAG = "CC BY 4.0"


def fmt(x) -> str:
    """Fixed-precision number text: 6 significant digits, no platform drift."""
    v = float(x)
    if v != v:
        return "0"
    text = f"{v:.6g}"
    return "0" if text in ("-0", "-0.0") else text


def escape(text: str) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def request_hash(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SvgDocument:
    text: str
    request_hash: str
    version: str
    license: str = LICENSE_TAG

    def __str__(self) -> str:
        return self.text


class Svg:
    """Accumulates SVG 1.1 markup; finish() wraps it with metadata."""

    def __init__(self, width: int, height: int):
        self.width = int(width)
        self.height = int(height)
        self.parts: list[str] = []

    def raw(self, markup: str) -> None:
        self.parts.append(markup)

    def el(self, tag: str, **attrs) -> None:
        self.parts.append(self._format(tag, attrs) + "/>")

    def open(self, tag: str, **attrs) -> None:
        self.parts.append(self._format(tag, attrs) + ">")

    def close(self, tag: str) -> None:
        self.parts.append(f"</{tag}>")

    def text(self, content, x, y, **attrs) -> None:
        open_tag = self._format("text", {"x": x, "y": y, **attrs})
        self.parts.append(f"{open_tag}>{escape(content)}</text>")

    def _format(self, tag: str, attrs: dict) -> str:
        chunks = [f"<{tag}"]
        for key, value in attrs.items():
            name = key.rstrip("_").replace("_", "-")
            if isinstance(value, (int, float)):
                value = fmt(value)
            chunks.append(f' {name}="{escape(value)}"')
        return "".join(chunks)

    def finish(self, title: str, version: str, req_hash: str) -> SvgDocument:
        meta = {
            "generator": f"clima {version}",
            "request": req_hash,
            "license": LICENSE_TAG,
        }
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}">'
            f"<metadata>{escape(json.dumps(meta, sort_keys=True))}</metadata>"
            f"<title>{escape(title)}</title>"
        )
        return SvgDocument(
            text=head + "".join(self.parts) + "</svg>",
            request_hash=req_hash,
            version=version,
        )
