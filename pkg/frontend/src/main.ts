import { App } from "./app.js";
import { Client } from "./api.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

const app = new App(root, new Client(""));
app.start().catch((err) => {
  root.textContent = `Could not reach the service: ${err}`;
});
