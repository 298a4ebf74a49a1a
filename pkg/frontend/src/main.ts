import { initApp } from "./app";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app container");
}
const productId = new URLSearchParams(window.location.search).get("product");
if (productId === null) {
  root.textContent = "Pass ?product=<id> to choose which product to explore.";
} else {
  void initApp(root, { productId });
}
