/** Co-writing UI: a verse grows line by line from beam candidates.
 *
 * The server is the single source of truth: the screen always renders the
 * last SessionView the service returned, every mutating call carries that
 * view's revision, and a 409 answer triggers a refetch-and-rerender that
 * can never lose accepted lines.
 */
import { ApiError } from "./api.js";
export class App {
    constructor(root, client, download = saveTextFile) {
        this.root = root;
        this.client = client;
        this.download = download;
        this.generators = [];
        this.session = null;
        this.notice = null;
        this.busy = false;
        this.retry = null;
        /** resolves when the in-flight action settles; tests await it */
        this.idle = Promise.resolve();
    }
    async start() {
        this.generators = await this.client.listGenerators();
        this.render();
    }
    /** Run a server action; render whatever state the server answers with. */
    act(action) {
        if (this.busy)
            return;
        this.busy = true;
        this.render();
        this.idle = (async () => {
            try {
                await action();
                this.retry = null;
            }
            catch (err) {
                if (err instanceof ApiError && err.status === 409 && this.session) {
                    this.session = await this.client.getSession(this.session.id);
                    this.notice = {
                        kind: "conflict",
                        text: "The session changed elsewhere; showing the latest state.",
                    };
                    this.retry = null;
                }
                else if (err instanceof ApiError) {
                    this.notice = { kind: "error", text: err.message };
                    this.retry = null;
                }
                else {
                    this.notice = {
                        kind: "error",
                        text: "Network problem; nothing was changed. Retry when ready.",
                    };
                    this.retry = action;
                }
            }
            finally {
                this.busy = false;
                this.render();
            }
        })();
    }
    createSession() {
        const starter = this.root.querySelector("#starter").value.trim();
        const generator = this.root.querySelector("#generator").value;
        const widthRaw = this.root.querySelector("#width").value;
        if (!starter) {
            this.notice = { kind: "error", text: "Enter a starter line first." };
            this.render();
            return; // inline validation: no request is sent
        }
        this.notice = null;
        this.act(async () => {
            this.session = await this.client.createSession(starter, generator, widthRaw ? Number(widthRaw) : undefined);
        });
    }
    choose(index) {
        const s = this.session;
        this.notice = null;
        this.act(async () => {
            this.session = await this.client.choose(s.id, index, s.revision);
        });
    }
    regenerate() {
        const s = this.session;
        this.notice = null;
        this.act(async () => {
            this.session = await this.client.regenerate(s.id, s.revision);
        });
    }
    undo() {
        const s = this.session;
        this.notice = null;
        this.act(async () => {
            this.session = await this.client.undo(s.id, s.revision);
        });
    }
    exportVerse() {
        const s = this.session;
        this.act(async () => {
            const text = await this.client.exportText(s.id);
            this.download("verse.txt", text);
            this.notice = { kind: "info", text: "Verse exported." };
        });
    }
    newSession() {
        this.session = null;
        this.notice = null;
        this.render();
    }
    // --- rendering -----------------------------------------------------------
    render() {
        this.root.textContent = "";
        this.root.appendChild(this.session ? this.renderSession(this.session) : this.renderStart());
    }
    renderNotice() {
        const el = h("div", { class: "notice" });
        if (this.notice) {
            el.classList.add(`notice-${this.notice.kind}`);
            el.textContent = this.notice.text;
            if (this.retry) {
                const retry = h("button", { class: "retry" }, "Retry");
                retry.addEventListener("click", () => {
                    const action = this.retry;
                    this.notice = null;
                    this.act(action);
                });
                el.appendChild(retry);
            }
        }
        return el;
    }
    renderStart() {
        const panel = h("section", { class: "start-screen" });
        panel.appendChild(h("h1", {}, "versesmith"));
        panel.appendChild(h("p", { class: "tagline" }, "Write a verse together: you pick each line, the models propose the next."));
        panel.appendChild(this.renderNotice());
        const form = h("div", { class: "start-form" });
        form.appendChild(h("label", { for: "starter" }, "Starter line"));
        form.appendChild(h("input", { id: "starter", type: "text",
            placeholder: "type the first line of your verse" }));
        form.appendChild(h("label", { for: "generator" }, "Generator"));
        const select = h("select", { id: "generator" });
        for (const g of this.generators) {
            select.appendChild(h("option", { value: g.name }, g.name));
        }
        const preferred = this.generators.find((g) => g.name === "rich_lyrics");
        if (preferred)
            select.value = preferred.name;
        form.appendChild(select);
        form.appendChild(h("label", { for: "width" }, "Candidates per line"));
        form.appendChild(h("input", { id: "width", type: "number", min: "1", max: "9",
            value: String(this.generators[0]?.width ?? 3) }));
        const startBtn = h("button", { id: "start", disabled: this.busy ? "" : undefined }, "Start writing");
        startBtn.addEventListener("click", () => this.createSession());
        form.appendChild(startBtn);
        panel.appendChild(form);
        return panel;
    }
    renderSession(s) {
        const panel = h("section", { class: "session-screen" });
        panel.appendChild(h("h1", {}, "versesmith"));
        panel.appendChild(h("p", { class: "session-meta" }, `${s.generator} · line ${s.accepted_lines.length} of ${s.lines_per_verse + 1}` +
            (s.status === "completed" ? " · complete" : "")));
        panel.appendChild(this.renderNotice());
        const verse = h("ol", { class: "verse-panel" });
        for (const line of s.accepted_lines) {
            verse.appendChild(h("li", { class: "verse-line" }, line));
        }
        panel.appendChild(verse);
        if (s.status === "completed") {
            panel.appendChild(h("p", { class: "completed-banner" }, "The verse is complete. Export it, or undo to explore another ending."));
        }
        else {
            const cards = h("div", { class: "candidates" });
            const maxScore = Math.max(...s.candidates.map((c) => c.score), -Infinity);
            for (const cand of s.candidates) {
                const card = h("button", {
                    class: "candidate-card",
                    "data-index": String(cand.index),
                    disabled: this.busy ? "" : undefined,
                });
                card.appendChild(h("span", { class: "candidate-text" }, cand.text));
                // relative preference bar: best candidate fills the track, the
                // rest shrink by their probability ratio to it
                const ratio = Math.exp(cand.score - maxScore);
                const bar = h("span", { class: "bar-track" });
                bar.appendChild(h("span", {
                    class: "bar-fill",
                    style: `width: ${Math.max(4, Math.round(ratio * 100))}%`,
                }));
                card.appendChild(bar);
                card.addEventListener("click", () => this.choose(cand.index));
                cards.appendChild(card);
            }
            if (!s.candidates.length) {
                cards.appendChild(h("p", { class: "no-candidates" }, "No fresh candidates for this line; try regenerate or undo."));
            }
            panel.appendChild(cards);
        }
        const actions = h("div", { class: "actions" });
        const regen = h("button", { id: "regenerate",
            disabled: this.busy || s.status === "completed" ? "" : undefined }, "Regenerate");
        regen.addEventListener("click", () => this.regenerate());
        const undoBtn = h("button", { id: "undo",
            disabled: this.busy || s.accepted_lines.length < 2 ? "" : undefined }, "Undo");
        undoBtn.addEventListener("click", () => this.undo());
        const exportBtn = h("button", { id: "export", disabled: this.busy ? "" : undefined }, "Export");
        exportBtn.addEventListener("click", () => this.exportVerse());
        const fresh = h("button", { id: "new-session" }, "New verse");
        fresh.addEventListener("click", () => this.newSession());
        actions.append(regen, undoBtn, exportBtn, fresh);
        panel.appendChild(actions);
        return panel;
    }
}
function h(tag, attrs = {}, text) {
    const el = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (value !== undefined)
            el.setAttribute(key, value);
    }
    if (text !== undefined)
        el.textContent = text;
    return el;
}
function saveTextFile(name, text) {
    const blob = new Blob([text], { type: "text/plain" });
    const url = URL.createObjectURL(blob);
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = name;
    anchor.click();
    URL.revokeObjectURL(url);
}
