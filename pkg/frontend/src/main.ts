import { App } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");
const api = (window as unknown as { ROOFFLOP_API?: string }).ROOFFLOP_API ?? "http://127.0.0.1:8787";
void new App(root, api).start();
