// Client-side view state: the loaded document, the reader's position, the
// highlighted move results, and a history of visited articles that back
// navigation restores exactly.

import { MapDocument, MoveEntry } from "./types.js";

export interface Snapshot {
    conceptId: number;
    articleId: string | null;
    highlighted: number[];
    entries: MoveEntry[];
    notice: string | null;
}

export class ViewState {
    private document_: MapDocument | null = null;
    private conceptId = 0;
    private articleId: string | null = null;
    private highlighted: number[] = [];
    private entries: MoveEntry[] = [];
    private notice: string | null = null;
    private history: Snapshot[] = [];

    get document(): MapDocument | null {
        return this.document_;
    }

    get currentConcept(): number {
        return this.conceptId;
    }

    get currentArticle(): string | null {
        return this.articleId;
    }

    get highlightedConcepts(): readonly number[] {
        return this.highlighted;
    }

    get moveEntries(): readonly MoveEntry[] {
        return this.entries;
    }

    get moveNotice(): string | null {
        return this.notice;
    }

    get visitedArticles(): string[] {
        const trail = this.history
            .map((s) => s.articleId)
            .filter((a): a is string => a !== null);
        if (this.articleId !== null) trail.push(this.articleId);
        return trail;
    }

    get canGoBack(): boolean {
        return this.history.length > 0;
    }

    loadDocument(document: MapDocument): void {
        this.document_ = document;
        const top = document.nodes.reduce(
            (best, node) => (node.rank < best.rank ? node : best),
            document.nodes[0]!,
        );
        this.conceptId = top.id;
        this.articleId = null;
        this.highlighted = [];
        this.entries = [];
        this.notice = null;
        this.history = [];
    }

    private snapshot(): Snapshot {
        return {
            conceptId: this.conceptId,
            articleId: this.articleId,
            highlighted: [...this.highlighted],
            entries: [...this.entries],
            notice: this.notice,
        };
    }

    private restore(snapshot: Snapshot): void {
        this.conceptId = snapshot.conceptId;
        this.articleId = snapshot.articleId;
        this.highlighted = [...snapshot.highlighted];
        this.entries = [...snapshot.entries];
        this.notice = snapshot.notice;
    }

    selectConcept(conceptId: number): void {
        this.conceptId = conceptId;
    }

    showMoveResults(entries: MoveEntry[], notice: string | null): void {
        this.entries = [...entries];
        this.notice = notice;
        this.highlighted = [...new Set(entries.map((e) => e.concept))];
    }

    clearMoveResults(): void {
        this.entries = [];
        this.notice = null;
        this.highlighted = [];
    }

    /** Re-center on a picked article; consecutive duplicates collapse. */
    visitArticle(articleId: string, conceptId: number): void {
        if (articleId === this.articleId) {
            this.conceptId = conceptId;
            return;
        }
        this.history.push(this.snapshot());
        this.articleId = articleId;
        this.conceptId = conceptId;
        this.clearMoveResults();
    }

    back(): boolean {
        const previous = this.history.pop();
        if (previous === undefined) return false;
        this.restore(previous);
        return true;
    }
}
