import { AuditApi } from "./api.js";
import { App } from "./ui.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const app = new App(root, new AuditApi());
app.bindKeyboard(window);
void app.start();
