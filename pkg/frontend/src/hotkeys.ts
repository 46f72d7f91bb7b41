// Keyboard dispatch for the labeling flow. Bindings are swapped out
// whenever the active view changes; typing in an input never triggers
// category hotkeys.

export type HotkeyMap = Record<string, () => void>;

let active: HotkeyMap = {};

export function setHotkeys(bindings: HotkeyMap): void {
  active = bindings;
}

export function handleKeydown(event: KeyboardEvent): void {
  const target = event.target as HTMLElement | null;
  if (target && (target.tagName === "INPUT"
                 || target.tagName === "TEXTAREA"
                 || target.isContentEditable)) {
    return;
  }
  if (event.ctrlKey || event.metaKey || event.altKey) return;
  const action = active[event.key];
  if (action) {
    event.preventDefault();
    action();
  }
}

export function installHotkeys(win: Window = window): () => void {
  win.addEventListener("keydown", handleKeydown);
  return () => win.removeEventListener("keydown", handleKeydown);
}
