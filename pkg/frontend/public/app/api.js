/** Typed client for the versesmith /v1 JSON API. */
/** A structured error answered by the service ({code, message}). */
export class ApiError extends Error {
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
        this.name = "ApiError";
    }
}
async function parseError(response) {
    let code = "unknown_error";
    let message = `request failed with status ${response.status}`;
    try {
        const body = (await response.json());
        if (body.code)
            code = body.code;
        if (body.message)
            message = body.message;
    }
    catch {
        // non-JSON error body; keep the defaults
    }
    throw new ApiError(response.status, code, message);
}
export class Client {
    constructor(baseUrl = "") {
        this.baseUrl = baseUrl;
    }
    async request(path, init) {
        const response = await fetch(this.baseUrl + path, {
            headers: { "content-type": "application/json" },
            ...init,
        });
        if (!response.ok)
            await parseError(response);
        return (await response.json());
    }
    async listGenerators() {
        const body = await this.request("/v1/generators");
        return body.generators;
    }
    createSession(starter, generator, width) {
        return this.request("/v1/sessions", {
            method: "POST",
            body: JSON.stringify(width === undefined ? { starter, generator } : { starter, generator, width }),
        });
    }
    getSession(id) {
        return this.request(`/v1/sessions/${id}`);
    }
    choose(id, index, revision) {
        return this.request(`/v1/sessions/${id}/choose`, {
            method: "POST",
            body: JSON.stringify({ index, revision }),
        });
    }
    regenerate(id, revision) {
        return this.request(`/v1/sessions/${id}/regenerate`, {
            method: "POST",
            body: JSON.stringify({ revision }),
        });
    }
    undo(id, revision) {
        return this.request(`/v1/sessions/${id}/undo`, {
            method: "POST",
            body: JSON.stringify({ revision }),
        });
    }
    async exportText(id) {
        const response = await fetch(`${this.baseUrl}/v1/sessions/${id}/export`);
        if (!response.ok)
            await parseError(response);
        return response.text();
    }
}
