// Tiny HTML-string helpers shared by the views.

export function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function chip(status: string): string {
  return `<span class="chip chip-${esc(status)}">${esc(status)}</span>`;
}

export function pct(value: number): string {
  return `${value}%`;
}

export function errorBanner(message: string): string {
  return `<div class="banner banner-error">${esc(message)}</div>`;
}

export function notFoundPage(what: string): string {
  return `<section class="notfound"><h2>Not found</h2><p>${esc(what)}</p></section>`;
}

export function emptyState(message: string): string {
  return `<div class="empty-state">${esc(message)}</div>`;
}
