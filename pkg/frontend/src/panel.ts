// Side panel: move candidates with rationale tags, notices, and the
// breadcrumb of visited articles.

import { MoveEntry } from "./types.js";

export function renderMovePanel(
    container: Element,
    entries: readonly MoveEntry[],
    notice: string | null,
    onPick: (entry: MoveEntry) => void,
): void {
    const doc = container.ownerDocument;
    container.textContent = "";
    if (notice !== null) {
        const note = doc.createElement("p");
        note.className = "notice";
        note.textContent = notice;
        container.appendChild(note);
    }
    if (entries.length === 0) {
        if (notice === null) {
            const note = doc.createElement("p");
            note.className = "notice empty";
            note.textContent = "no articles this way";
            container.appendChild(note);
        }
        return;
    }
    const list = doc.createElement("ul");
    list.className = "move-results";
    for (const entry of entries) {
        const item = doc.createElement("li");
        item.className = "move-entry";
        item.setAttribute("data-article", entry.article);
        item.setAttribute("data-concept", String(entry.concept));
        const tag = doc.createElement("span");
        tag.className = "rationale";
        tag.textContent = entry.rationale;
        const link = doc.createElement("a");
        link.href = "#";
        link.textContent = entry.article;
        link.addEventListener("click", (event) => {
            event.preventDefault();
            onPick(entry);
        });
        item.appendChild(link);
        item.appendChild(tag);
        list.appendChild(item);
    }
    container.appendChild(list);
}

export function renderBreadcrumb(container: Element, visited: readonly string[]): void {
    container.textContent = "";
    if (visited.length === 0) return;
    const doc = container.ownerDocument;
    const trail = doc.createElement("p");
    trail.className = "breadcrumb";
    trail.textContent = visited.join(" → ");
    container.appendChild(trail);
}
