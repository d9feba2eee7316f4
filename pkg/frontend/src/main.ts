import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("root");
if (root) {
  const app = new App(root, new ApiClient(""));
  void app.start();
}
